#pragma once

// Boundary of the height compactification of T1 (up-down) T2 and the Busemann
// functions attached to its points.
//
// Boundary points, with their (tree 1, tree 2, height) coordinates:
//   C1(xi1)  (xi1,    gamma2, +inf)
//   C2(xi2)  (gamma1, xi2,    -inf)
//   T1(y1)   (y1,     gamma2, h1(y1))
//   T2(y2)   (gamma1, y2,     -h2(y2))
//   Z(k)     (gamma1, gamma2, k)
// The two closure points (gamma1, gamma2, +-inf) are C1(gamma) and C2(gamma).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "horo/horoproduct.hpp"
#include "horo/tree_boundary.hpp"

namespace horo {

struct C1Point {
  RayAddress ray;
  friend bool operator==(const C1Point&, const C1Point&) = default;
};
struct C2Point {
  RayAddress ray;
  friend bool operator==(const C2Point&, const C2Point&) = default;
};
struct T1Point {
  VertexAddress vertex;
  friend bool operator==(const T1Point&, const T1Point&) = default;
};
struct T2Point {
  VertexAddress vertex;
  friend bool operator==(const T2Point&, const T2Point&) = default;
};
struct ZPoint {
  std::int64_t level = 0;
  friend bool operator==(const ZPoint&, const ZPoint&) = default;
};
struct InteriorPoint {
  DLVertex vertex;
  friend bool operator==(const InteriorPoint&, const InteriorPoint&) = default;
};

using DLBoundaryPoint = std::variant<C1Point, C2Point, T1Point, T2Point, ZPoint>;

/// b_z for an interior point z, or one of the five boundary families.
using BoundaryFunction = std::variant<InteriorPoint, C1Point, C2Point, T1Point, T2Point, ZPoint>;

/// "C1:<ray>", "C2:<ray>", "T1:<vertex>", "T2:<vertex>", "Z:<k>".
std::string to_string(const DLBoundaryPoint& p);
DLBoundaryPoint parse_boundary_point(std::string_view text);
/// Boundary forms plus "I:<x1|x2>" for interior points.
std::string to_string(const BoundaryFunction& f);
BoundaryFunction parse_boundary_function(std::string_view text);

/// Value of the function at y:
///   Interior(z)  b_z(y)
///   C1(xi1)      b_xi1(y1)
///   C2(xi2)      b_xi2(y2)
///   T1(v1)       b_v1(y1) + h2(y2) + c_{h1(v1)}(y1)
///   T2(v2)       h1(y1) + b_v2(y2) + |h2(v2)| - |h2(v2) - h2(y2)|
///   Z(k)         c_k(y1)
std::int64_t eval(const BoundaryFunction& f, const DLVertex& y);

/// Extended integers Z u {+inf, -inf}.
struct ExtendedInt {
  enum class Kind { Finite, PlusInfinity, MinusInfinity };
  Kind kind = Kind::Finite;
  std::int64_t value = 0;

  static ExtendedInt finite(std::int64_t v) { return {Kind::Finite, v}; }
  static ExtendedInt plus_infinity() { return {Kind::PlusInfinity, 0}; }
  static ExtendedInt minus_infinity() { return {Kind::MinusInfinity, 0}; }
  bool is_finite() const noexcept { return kind == Kind::Finite; }

  friend bool operator==(const ExtendedInt&, const ExtendedInt&) = default;
};

std::string to_string(const ExtendedInt& e);

/// A point of the tree compactification T u boundary(T).
using TreePoint = std::variant<VertexAddress, RayAddress>;

std::string to_string(const TreePoint& p);

struct HMCoordinates {
  TreePoint first;
  TreePoint second;
  ExtendedInt height;

  friend bool operator==(const HMCoordinates&, const HMCoordinates&) = default;
};

HMCoordinates hm_coordinates(const DLBoundaryPoint& p);

/// Inverse of hm_coordinates on the five boundary strata; nullopt for triples
/// outside them.
std::optional<DLBoundaryPoint> boundary_point_from_hm(const HMCoordinates& c);

/// Theta: the Busemann function with the same payload.
BoundaryFunction theta(const DLBoundaryPoint& p);

/// Checks the payload against the trees (canonical vertices, valid rays).
bool is_valid(const DLSpec& spec, const BoundaryFunction& f);

/// Per-vertex stabilization of eval(seq[n], y) towards eval(target, y).
struct LimitCheckReport {
  struct Entry {
    DLVertex vertex;
    /// Smallest i with eval(seq[n], y) == eval(target, y) for all n >= i;
    /// seq.size() when the last term disagrees.
    std::size_t stable_from = 0;
  };
  struct Witness {
    DLVertex vertex;
    std::size_t index = 0;
    std::int64_t value = 0;
    std::int64_t expected = 0;
  };

  std::vector<Entry> entries;
  /// Max over entries of stable_from.
  std::size_t stabilization_index = 0;
  /// True iff the last term agrees with the target on the whole ball.
  bool stabilized = false;
  /// First disagreement of the last term, when not stabilized.
  std::optional<Witness> witness;
};

LimitCheckReport boundary_limit_check(const DLSpec& spec, const std::vector<BoundaryFunction>& seq,
                                      const BoundaryFunction& target, std::int64_t test_ball_radius);

/// Values of f on the given vertices, in order (narrowed to int32 for the kernels).
std::vector<std::int32_t> value_table(const BoundaryFunction& f, const std::vector<DLVertex>& vertices);

}  // namespace horo
