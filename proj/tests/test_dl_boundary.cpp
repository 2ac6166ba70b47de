#include <cstdlib>

#include "doctest.h"

#include "horo/dl_boundary.hpp"
#include "horo/error.hpp"
#include "horo/limits.hpp"

using namespace horo;

namespace {

const DLSpec dl33{TreeSpec::regular(3), TreeSpec::regular(3)};
DLVertex D(const char* s) { return parse_dl_vertex(s); }
VertexAddress V(const char* s) { return parse_vertex(s); }

BoundaryFunction F(const char* s) { return parse_boundary_function(s); }

// T2 read off the closed-form expression with c evaluated on the tree-2 height.
std::int64_t t2_literal(const VertexAddress& v2, const DLVertex& y) {
  const std::int64_t k = -height(v2);
  return height(y.x1) + busemann_point(v2, y.x2) + std::abs(k) - std::abs(k - height(y.x2));
}

}  // namespace

TEST_CASE("text forms") {
  for (const char* s : {"C1:gamma", "C2:0;(1)", "T1:1;0", "T2:0;", "Z:-3", "I:0;0|1;"}) {
    CHECK(to_string(F(s)) == s);
  }
  CHECK(to_string(parse_boundary_point("Z:4")) == "Z:4");
  CHECK_THROWS_AS(F("Q:1"), ParseError);
  CHECK_THROWS_AS(parse_boundary_point("I:base"), ParseError);
}

TEST_CASE("eval examples") {
  CHECK(eval(ZPoint{1}, D("0;0|1;")) == 1);
  for (const auto& y : dl_ball(dl33, 3)) CHECK(eval(C1Point{RayAddress::gamma()}, y) == height(y.x1));
  CHECK(eval(T2Point{V("1;")}, base_vertex()) == 0);
  CHECK(eval(InteriorPoint{D("0;0|1;")}, D("0;1|1;")) == 1);
}

TEST_CASE("hm_coordinates examples") {
  const auto z = hm_coordinates(ZPoint{3});
  CHECK(z.first == TreePoint{RayAddress::gamma()});
  CHECK(z.second == TreePoint{RayAddress::gamma()});
  CHECK(z.height == ExtendedInt::finite(3));

  const auto t1 = hm_coordinates(T1Point{V("0;0")});
  CHECK(t1.first == TreePoint{V("0;0")});
  CHECK(t1.second == TreePoint{RayAddress::gamma()});
  CHECK(t1.height == ExtendedInt::finite(1));

  const RayAddress xi(0, {}, {1});
  const auto c2 = hm_coordinates(C2Point{xi});
  CHECK(c2.first == TreePoint{RayAddress::gamma()});
  CHECK(c2.second == TreePoint{xi});
  CHECK(c2.height == ExtendedInt::minus_infinity());
  CHECK(hm_coordinates(C1Point{xi}).height == ExtendedInt::plus_infinity());
  CHECK(hm_coordinates(T2Point{V("0;0")}).height == ExtendedInt::finite(-1));
  CHECK(to_string(ExtendedInt::plus_infinity()) == "+inf");
}

TEST_CASE("boundary_point_from_hm rejects triples outside the strata") {
  const RayAddress xi(0, {}, {1});
  CHECK_FALSE(boundary_point_from_hm({TreePoint{xi}, TreePoint{xi}, ExtendedInt::plus_infinity()}));
  CHECK_FALSE(boundary_point_from_hm({TreePoint{V("0;0")}, TreePoint{RayAddress::gamma()}, ExtendedInt::finite(2)}));
  CHECK_FALSE(boundary_point_from_hm({TreePoint{xi}, TreePoint{RayAddress::gamma()}, ExtendedInt::finite(0)}));
  CHECK(boundary_point_from_hm({TreePoint{RayAddress::gamma()}, TreePoint{RayAddress::gamma()}, ExtendedInt::finite(-2)}) ==
        DLBoundaryPoint{ZPoint{-2}});
}

TEST_CASE("theta examples") {
  CHECK(theta(ZPoint{2}) == BoundaryFunction{ZPoint{2}});
  const RayAddress xi(1, {0}, {1});
  CHECK(theta(C1Point{xi}) == BoundaryFunction{C1Point{xi}});
  CHECK(theta(T2Point{V("0;1")}) == BoundaryFunction{T2Point{V("0;1")}});
}

TEST_CASE("validity against the trees") {
  CHECK(is_valid(dl33, F("T1:1;0")));
  CHECK_FALSE(is_valid(dl33, F("T1:1;1")));
  CHECK_FALSE(is_valid(dl33, F("C2:1;(1)")));
  CHECK_FALSE(is_valid(DLSpec{TreeSpec::regular(3), TreeSpec::line()}, F("C2:0;(1)")));
  CHECK(is_valid(DLSpec{TreeSpec::regular(3), TreeSpec::line()}, F("C2:0;(0)")));
}

TEST_CASE("boundary_limit_check examples") {
  std::vector<BoundaryFunction> up, down, march;
  for (std::int64_t k = 1; k <= 12; ++k) {
    up.push_back(ZPoint{k});
    down.push_back(ZPoint{-k});
  }
  const auto r_up = boundary_limit_check(dl33, up, C1Point{RayAddress::gamma()}, 3);
  CHECK(r_up.stabilized);
  CHECK(r_up.stabilization_index == 2);
  CHECK(boundary_limit_check(dl33, down, C2Point{RayAddress::gamma()}, 3).stabilized);

  const RayAddress xi(0, {}, {0});
  for (std::int64_t n = 0; n < 20; ++n) march.push_back(T1Point{xi.vertex_at_depth(n)});
  CHECK(boundary_limit_check(dl33, march, C1Point{xi}, 3).stabilized);

  const auto wrong = boundary_limit_check(dl33, up, C2Point{RayAddress::gamma()}, 3);
  CHECK_FALSE(wrong.stabilized);
  REQUIRE(wrong.witness);
  CHECK(wrong.witness->value != wrong.witness->expected);
}

TEST_CASE("T2 uses the tree-2 height with the sign of the horocycle") {
  // A FixedSecond sequence with x2 = v2 converges to b at T2(v2). The derived
  // form matches the empirical limit; the form with c_{-h2(v2)} does not.
  for (const char* s : {"0;0", "0;1.0", "2;", "1;0.1"}) {
    const auto v2 = V(s);
    const SequenceFamily fam{FixedSecondFamily{v2, 0, 1}};
    const auto cls = classify_hm(dl33, fam);
    REQUIRE(cls.hm_limit == BoundaryFunction{T2Point{v2}});
    const auto n0 = *cls.stabilization_index;
    const auto rep = empirical_pointwise_check(dl33, fam, n0, n0 + 50, 3, T2Point{v2});
    CHECK(rep.stabilized());

    const auto x = family_term(dl33, fam, n0 + 10);
    std::size_t literal_misses = 0;
    for (const auto& y : dl_ball(dl33, 3)) {
      CHECK(dl_busemann_by_definition(x, y) == eval(T2Point{v2}, y));
      if (t2_literal(v2, y) != dl_busemann_by_definition(x, y)) ++literal_misses;
    }
    CAPTURE(s);
    if (height(v2) != 0) CHECK(literal_misses > 0);
  }
}

TEST_CASE("property: boundary functions are horofunctions on the ball") {
  const auto ball = dl_ball(dl33, 3);
  std::vector<BoundaryFunction> fs = {F("C1:0;(0)"), F("C2:1;0(1)"), F("T1:2;"), F("T2:0;1.1"), F("Z:2"), F("Z:-1")};
  for (const auto& f : fs) {
    CHECK(eval(f, base_vertex()) == 0);
    for (const auto& y : ball) {
      for (const auto& w : dl_neighbors(dl33, y)) CHECK(std::abs(eval(f, y) - eval(f, w)) == 1);
    }
  }
}
