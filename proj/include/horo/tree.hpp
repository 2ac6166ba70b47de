#pragma once

// Rooted trees pointed at an end.
//
// A tree (T, o, gamma) is described by a TreeSpec degree rule. Vertices are
// addressed relative to the distinguished ray gamma = (z_0 = o, z_1, z_2, ...):
// the address (n; s) names the vertex reached by walking from o along gamma to
// z_n and then following the child word s off the ray. The first letter of s
// is always an off-ray child of z_n, so every vertex has exactly one address.
//
// Child labels:
//   at o           0 .. deg(o) - 2   (every neighbor except z_1)
//   at z_n, n >= 1 0 .. deg(z_n) - 3 (every neighbor except z_{n-1}, z_{n+1})
//   off the ray    0 .. deg(v) - 2   (every neighbor except the parent)

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace horo {

using Label = std::uint32_t;

struct VertexAddress {
  std::int64_t branch = 0;
  std::vector<Label> suffix;

  friend bool operator==(const VertexAddress&, const VertexAddress&) = default;
  friend auto operator<=>(const VertexAddress&, const VertexAddress&) = default;

  bool is_base() const noexcept { return branch == 0 && suffix.empty(); }
  bool on_ray() const noexcept { return suffix.empty(); }
  /// d(o, v).
  std::int64_t depth() const noexcept {
    return branch + static_cast<std::int64_t>(suffix.size());
  }
};

inline VertexAddress base_address() { return {}; }
inline VertexAddress ray_vertex(std::int64_t n) { return {n, {}}; }

/// "n;c1.c2.c3", with "n;" for ray vertices.
std::string to_string(const VertexAddress& v);
VertexAddress parse_vertex(std::string_view text);

struct VertexAddressHash {
  std::size_t operator()(const VertexAddress& v) const noexcept;
};

struct RegularFamily {
  int degree = 3;
};

/// The bi-infinite path.
struct LineFamily {};

/// Ray vertex z_n has degree ray_degrees[n mod |ray_degrees|]; an off-ray vertex
/// at suffix depth j >= 1 has degree off_ray_degrees[(j - 1) mod |off_ray_degrees|].
struct RayPeriodicFamily {
  std::vector<int> ray_degrees;
  std::vector<int> off_ray_degrees;
};

/// Vertices with d(o, v) <= radius take core_degree unless listed in overrides;
/// every other vertex has tail_degree.
struct ExplicitCoreFamily {
  int radius = 0;
  int core_degree = 3;
  std::map<VertexAddress, int> overrides;
  int tail_degree = 3;
};

/// Arbitrary degree rule. Usable for evaluation and simulation; the decision
/// procedures (f_set, realizability) refuse it.
struct CallbackFamily {
  std::string name;
  std::function<int(const VertexAddress&)> degree;
};

class TreeSpec {
 public:
  using Family = std::variant<RegularFamily, LineFamily, RayPeriodicFamily, ExplicitCoreFamily,
                              CallbackFamily>;

  /// Throws SpecError on malformed parameters or a min_degree other than 2 or 3.
  explicit TreeSpec(Family family, int min_degree = 2);

  static TreeSpec regular(int degree, int min_degree = 2);
  static TreeSpec line(int min_degree = 2);

  const Family& family() const noexcept { return family_; }
  int min_degree() const noexcept { return min_degree_; }
  bool decidable() const noexcept { return !std::holds_alternative<CallbackFamily>(family_); }

  /// Degree assigned by the rule. Does not check that v is canonical.
  int degree(const VertexAddress& v) const;
  /// Number of child labels available at v (see the labeling table above).
  int child_count(const VertexAddress& v) const;

  friend bool operator==(const TreeSpec& a, const TreeSpec& b);

 private:
  Family family_;
  int min_degree_;
};

struct DegreeViolation {
  VertexAddress witness;
  int degree = 0;
  std::string reason;
};

struct ValidationReport {
  std::vector<DegreeViolation> violations;
  /// Callback families are only probed up to a finite radius.
  bool exhaustive = true;

  bool ok() const noexcept { return violations.empty(); }
};

ValidationReport validate_spec(const TreeSpec& spec);

bool is_canonical(const TreeSpec& spec, const VertexAddress& v);
/// Throws AddressError naming the first illegal letter.
void require_canonical(const TreeSpec& spec, const VertexAddress& v);

int degree(const TreeSpec& spec, const VertexAddress& v);

/// Order: the gamma-ward neighbor's ray partner first on the ray (z_{n-1}, then
/// z_{n+1}), the parent first off the ray, then children by label.
std::vector<VertexAddress> neighbors(const TreeSpec& spec, const VertexAddress& v);

/// Neighbors of height height(v) + 1, in neighbor order.
std::vector<VertexAddress> up_neighbors(const TreeSpec& spec, const VertexAddress& v);

/// The unique neighbor of height height(v) - 1.
VertexAddress gamma_ward(const VertexAddress& v);

/// N(v, w): length of the longest common initial segment of the paths [o,v], [o,w].
std::int64_t common_prefix(const VertexAddress& v, const VertexAddress& w);

std::int64_t dist(const VertexAddress& v, const VertexAddress& w);

/// b_gamma(v) = |suffix| - branch.
inline std::int64_t height(const VertexAddress& v) noexcept {
  return static_cast<std::int64_t>(v.suffix.size()) - v.branch;
}

/// b_z(y) = d(z, y) - d(z, o).
std::int64_t busemann_point(const VertexAddress& z, const VertexAddress& y);

/// Every canonical address within distance radius of o, ordered by distance,
/// then branch index, then suffix.
std::vector<VertexAddress> enumerate_ball(const TreeSpec& spec, std::int64_t radius);

}  // namespace horo
