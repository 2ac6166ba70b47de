#pragma once

// Boundary points of a tree and the functions attached to them.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "horo/tree.hpp"

namespace horo {

/// A point of the geometric boundary: either the distinguished end gamma, or
/// the eventually periodic ray that leaves gamma at z_branch and then follows
/// prefix, cycle, cycle, ...
///
/// Stored in canonical form (primitive cycle, prefix rolled into the cycle as far
/// as possible), so structural equality is equality of rays.
class RayAddress {
 public:
  /// The end gamma.
  RayAddress() = default;

  /// Throws SpecError if cycle is empty.
  RayAddress(std::int64_t branch, std::vector<Label> prefix, std::vector<Label> cycle);

  static RayAddress gamma() { return {}; }

  bool is_gamma() const noexcept { return gamma_; }
  std::int64_t branch() const noexcept { return branch_; }
  const std::vector<Label>& prefix() const noexcept { return prefix_; }
  const std::vector<Label>& cycle() const noexcept { return cycle_; }

  /// Letter i (0-based) of the off-ray word. Only for branching rays.
  Label letter(std::size_t i) const;

  /// The ray vertex at distance depth from o.
  VertexAddress vertex_at_depth(std::int64_t depth) const;

  friend bool operator==(const RayAddress&, const RayAddress&) = default;
  friend auto operator<=>(const RayAddress&, const RayAddress&) = default;

 private:
  bool gamma_ = true;
  std::int64_t branch_ = 0;
  std::vector<Label> prefix_;
  std::vector<Label> cycle_;
};

/// "gamma" or "n;prefix(cycle)", e.g. "0;0.1(0.1)" or "2;(0)".
std::string to_string(const RayAddress& ray);
RayAddress parse_ray(std::string_view text);

/// True iff every letter of the ray is a legal child label under spec.
bool is_valid_ray(const TreeSpec& spec, const RayAddress& ray);
void require_valid_ray(const TreeSpec& spec, const RayAddress& ray);

/// N(v, xi): length of the common initial segment of [o, v] and xi.
std::int64_t common_prefix(const VertexAddress& v, const RayAddress& ray);

/// N(xi1, xi2); nullopt when the rays coincide.
std::optional<std::int64_t> common_prefix(const RayAddress& a, const RayAddress& b);

/// d(xi1, xi2) = 2^-exponent, kept symbolic. A zero distance has no exponent.
struct BoundaryDistance {
  std::optional<std::int64_t> exponent;

  bool is_zero() const noexcept { return !exponent.has_value(); }
};

BoundaryDistance boundary_distance(const RayAddress& a, const RayAddress& b);

/// [o, v]_xi.
VertexAddress confluent_with_ray(const VertexAddress& v, const RayAddress& ray);

/// b_xi(y) = d(o, y) - 2 N(y, xi). Equals height(y) for xi = gamma.
std::int64_t busemann_ray(const RayAddress& ray, const VertexAddress& y);

/// c_k(v) = |k| - |k - height(v)|.
std::int64_t c_k(std::int64_t k, const VertexAddress& v);

/// |H_k intersected with the ball of the given radius|.
std::int64_t level_set_count(const TreeSpec& spec, std::int64_t k, std::int64_t radius);

enum class LevelSetVerdict { Finite, Infinite };

struct LevelSetReport {
  std::int64_t k = 0;
  std::vector<std::pair<std::int64_t, std::int64_t>> sampled_counts;
  LevelSetVerdict verdict = LevelSetVerdict::Finite;
};

/// Counts |H_k cap ball(R)| for R = 0..max_radius. The verdict is Infinite when
/// the count still grows over the last two radii, Finite when it is flat there.
LevelSetReport level_set_report(const TreeSpec& spec, std::int64_t k, std::int64_t max_radius);

/// F(T) = { k : H_k infinite }. Under the address model it is either all of Z
/// (infinitely many ray vertices of degree >= 3) or empty.
enum class FSet { AllIntegers, Empty };

/// Throws UndecidableError for callback families.
FSet f_set(const TreeSpec& spec);

inline bool contains(FSet set, std::int64_t) noexcept { return set == FSet::AllIntegers; }

std::string to_string(FSet set);

}  // namespace horo
