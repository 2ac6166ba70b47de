#pragma once

// Sequence families in T1 (up-down) T2 and their limits, both in the height
// compactification (component limits) and in the Busemann compactification
// (pointwise limits of b_{x_n}).

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "horo/dl_boundary.hpp"

namespace horo {

/// Walks H_k(T) in the order: branch index m = max(0, -k), max(0, -k) + 1, ...,
/// and within a branch the child words of length k + m lexicographically.
class LevelSetEnumerator {
 public:
  /// scan_cap bounds the number of empty branches skipped in a row before the
  /// level set is declared finite (FamilyError).
  LevelSetEnumerator(const TreeSpec& spec, std::int64_t level, std::uint64_t scan_cap = 4096);

  const VertexAddress& current() const noexcept { return current_; }
  /// Position of current() in the enumeration.
  std::uint64_t position() const noexcept { return position_; }
  void advance();
  /// Advance until position() == target (target >= position()).
  void seek(std::uint64_t target);

 private:
  bool bump();
  void enter_branch(std::int64_t m);

  const TreeSpec* spec_;
  std::int64_t level_;
  std::uint64_t scan_cap_;
  VertexAddress current_;
  std::uint64_t position_ = 0;
};

/// prefix terms, then vertex forever.
struct EventuallyConstantFamily {
  std::vector<DLVertex> prefix;
  DLVertex vertex;
};

/// Term n has height H_n = start_height + n * stride on the moving side.
/// side 1: x1 runs along the ray in T1 at height H_n, x2 = (H_n + offset; 0^offset).
/// side 2: the same with the trees exchanged (h1 = -H_n).
/// For the gamma ray the moving coordinate climbs (m_n; 0^{H_n + m_n}) where m_n
/// is the n-th branching ray vertex z_m with m >= 1.
struct RadialRayFamily {
  int side = 1;
  RayAddress ray;
  std::int64_t offset = 0;
  std::int64_t start_height = 1;
  std::int64_t stride = 1;
};

/// Term n pairs elements number start + n * stride of H_level(T1) and H_-level(T2).
struct HorocyclicFamily {
  std::int64_t level = 0;
  std::uint64_t start = 0;
  std::uint64_t stride = 1;
};

/// x2 fixed, x1 runs through H_{-h2(x2)}(T1) as in HorocyclicFamily.
struct FixedSecondFamily {
  VertexAddress x2;
  std::uint64_t start = 0;
  std::uint64_t stride = 1;
};

/// x1 fixed, x2 runs through H_{-h1(x1)}(T2).
struct FixedFirstFamily {
  VertexAddress x1;
  std::uint64_t start = 0;
  std::uint64_t stride = 1;
};

struct SequenceFamily;

/// Either a round-robin interleave of sub-families (term n is term n / k of part
/// n mod k) or an opaque generator.
struct CustomFamily {
  std::string name;
  std::vector<SequenceFamily> interleave;
  std::function<DLVertex(std::uint64_t)> generator;
};

struct SequenceFamily {
  using Kind = std::variant<EventuallyConstantFamily, RadialRayFamily, HorocyclicFamily,
                            FixedSecondFamily, FixedFirstFamily, CustomFamily>;
  Kind kind;
};

std::string kind_name(const SequenceFamily& family);

/// Terms begin .. end - 1. Throws FamilyError when a term is not a valid vertex
/// or a required level set is finite.
std::vector<DLVertex> family_terms(const DLSpec& spec, const SequenceFamily& family, std::uint64_t begin,
                                   std::uint64_t end);
DLVertex family_term(const DLSpec& spec, const SequenceFamily& family, std::uint64_t n);

enum class Verdict { Converges, NotConvergent, NotDecided };
std::string to_string(Verdict v);

struct ComponentLimits {
  std::optional<TreePoint> first;
  std::optional<TreePoint> second;
  std::optional<ExtendedInt> height;

  friend bool operator==(const ComponentLimits&, const ComponentLimits&) = default;
};

struct LimitReport {
  Verdict verdict = Verdict::NotDecided;
  ComponentLimits components;
  /// Interior(v) or one of the five boundary variants.
  std::optional<BoundaryFunction> hm_limit;
  /// theta(hm_limit); empty means no limit.
  std::optional<BoundaryFunction> busemann_limit;
  /// Radius the stabilization index refers to.
  std::int64_t radius = 0;
  /// First term index from which b_{x_n} agrees with the limit on the ball of that
  /// radius. For non-convergent interleaves: the index from which every part has
  /// settled on its own limit.
  std::optional<std::uint64_t> stabilization_index;
  /// Realizability of the limit: divergent components only / both heights.
  std::optional<bool> realizable_per_component;
  std::optional<bool> realizable_literal;
  /// Window inspected by the generator heuristic.
  std::optional<std::pair<std::uint64_t, std::uint64_t>> heuristic_window;
  std::vector<std::string> notes;
};

struct ClassifyOptions {
  std::int64_t radius = 4;
  /// Terms inspected for opaque generators.
  std::uint64_t heuristic_begin = 100;
  std::uint64_t heuristic_end = 300;
};

LimitReport classify_hm(const DLSpec& spec, const SequenceFamily& family, const ClassifyOptions& options = {});

std::optional<BoundaryFunction> busemann_limit(const DLSpec& spec, const SequenceFamily& family,
                                               const ClassifyOptions& options = {});

struct PointwiseReport {
  struct Violation {
    DLVertex vertex;
    std::uint64_t index = 0;
    std::int64_t value = 0;
    std::int64_t expected = 0;
  };

  std::uint64_t n0 = 0;
  std::uint64_t n1 = 0;
  std::int64_t radius = 0;
  /// b_{x_n}(y) is the same for every n in [n0, n1] and every y in the ball.
  bool constant = false;
  /// The limit compared against (empty when none was available).
  std::optional<BoundaryFunction> limit;
  /// constant, and the common value table equals the limit's.
  bool matches_limit = false;
  /// Non-constancy witnesses first (against term n0), then limit mismatches at n0.
  std::vector<Violation> violations;

  bool stabilized() const noexcept { return constant && matches_limit; }
};

/// Evaluates b_{x_n}(y) = d(x_n, y) - d(x_n, o) for n in [n0, n1] and y in the
/// ball. The limit defaults to busemann_limit(family).
PointwiseReport empirical_pointwise_check(const DLSpec& spec, const SequenceFamily& family, std::uint64_t n0,
                                          std::uint64_t n1, std::int64_t radius,
                                          std::optional<BoundaryFunction> limit = std::nullopt,
                                          std::size_t max_violations = 8);

struct FamilyCase {
  std::string label;
  DLSpec spec;
  SequenceFamily family;
};

struct IsomorphismEntry {
  std::string label;
  Verdict symbolic = Verdict::NotDecided;
  std::optional<BoundaryFunction> symbolic_limit;
  /// Empirical side: constant over the window or not.
  bool empirical_constant = false;
  std::uint64_t n0 = 0;
  std::uint64_t n1 = 0;
  bool agree = false;
  std::string detail;
};

struct IsomorphismReport {
  std::vector<IsomorphismEntry> entries;
  std::size_t agreed = 0;
  std::size_t disagreed = 0;
  std::size_t undecided = 0;

  bool ok() const noexcept { return disagreed == 0; }
};

/// For each case: classify, then run the empirical check on a window of
/// window_length terms starting at the stabilization index (or the heuristic
/// window for undecided generators) and compare verdicts and limits.
IsomorphismReport isomorphism_check(const std::vector<FamilyCase>& cases, std::int64_t radius = 4,
                                    std::uint64_t window_length = 50);

struct Realizability {
  bool realizable = false;
  std::string reason;
};

/// Whether p is the Busemann limit of some sequence. Finite-height limits need an
/// infinite horocycle in every divergent component: Z(k) needs k in F(T1) and -k
/// in F(T2), T1(y1) needs -h1(y1) in F(T2), T2(y2) needs -h2(y2) in F(T1).
/// C1/C2 along a ray other than gamma are always realizable; C1(gamma) needs
/// x1 -> gamma1 with h1 -> +inf, which exists iff F(T1) is all of Z (C2 likewise).
/// Throws UndecidableError for callback trees.
Realizability realizability(const DLSpec& spec, const DLBoundaryPoint& p);

/// The reading where both height limits must lie in F(T_i) u {+-inf}, also for a
/// constant component. Differs from realizability() only on T1/T2.
Realizability realizability_literal(const DLSpec& spec, const DLBoundaryPoint& p);

}  // namespace horo
