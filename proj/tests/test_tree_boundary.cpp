#include <algorithm>

#include "doctest.h"

#include "horo/error.hpp"
#include "horo/tree_boundary.hpp"

using namespace horo;

namespace {
VertexAddress V(const char* s) { return parse_vertex(s); }
const RayAddress xi0(0, {}, {0});
}  // namespace

TEST_CASE("ray text and canonical form") {
  CHECK(parse_ray("gamma").is_gamma());
  CHECK(to_string(parse_ray("0;0.1(0.1)")) == to_string(parse_ray("0;(0.1)")));
  CHECK(RayAddress(0, {0}, {0}) == RayAddress(0, {}, {0}));
  CHECK(RayAddress(1, {}, {0, 0}) == RayAddress(1, {}, {0}));
  CHECK(RayAddress(0, {1}, {0, 1}) == RayAddress(0, {}, {1, 0}));
  CHECK(RayAddress(0, {}, {0}) != RayAddress::gamma());
  CHECK_THROWS_AS(RayAddress(0, {}, {}), SpecError);
  CHECK_THROWS_AS(parse_ray("0;(0"), ParseError);
  for (const char* s : {"gamma", "2;(0)", "0;0.1(0)", "3;0(0.1)"}) CHECK(to_string(parse_ray(s)) == s);
}

TEST_CASE("ray validity") {
  const auto t = TreeSpec::regular(3);
  CHECK(is_valid_ray(t, parse_ray("0;(1)")));
  CHECK_FALSE(is_valid_ray(t, parse_ray("1;(1)")));
  CHECK(is_valid_ray(t, parse_ray("1;0(1)")));
  CHECK_FALSE(is_valid_ray(t, parse_ray("0;(2)")));
  CHECK_FALSE(is_valid_ray(TreeSpec::line(), parse_ray("1;(0)")));
  CHECK(is_valid_ray(TreeSpec::line(), parse_ray("0;(0)")));
}

TEST_CASE("confluent_with_ray examples") {
  CHECK(confluent_with_ray(V("3;"), RayAddress::gamma()) == V("3;"));
  CHECK(confluent_with_ray(V("0;0.1"), xi0) == V("0;0"));
  CHECK(confluent_with_ray(V("2;"), xi0) == V("0;"));
}

TEST_CASE("busemann_ray examples") {
  CHECK(busemann_ray(xi0, base_address()) == 0);
  CHECK(busemann_ray(RayAddress::gamma(), base_address()) == 0);
  CHECK(busemann_ray(RayAddress::gamma(), V("2;")) == -2);
  CHECK(busemann_ray(xi0, V("2;")) == 2);
}

TEST_CASE("c_k examples") {
  CHECK(c_k(0, base_address()) == 0);
  CHECK(c_k(3, V("0;0")) == 1);
  CHECK(c_k(-2, V("1;")) == 1);
}

TEST_CASE("level_set_count examples against brute force") {
  auto brute = [](const TreeSpec& t, std::int64_t k, std::int64_t r) {
    const auto ball = enumerate_ball(t, r);
    return std::count_if(ball.begin(), ball.end(), [k](const VertexAddress& v) { return height(v) == k; });
  };
  CHECK(level_set_count(TreeSpec::line(), 2, 5) == 1);
  CHECK(level_set_count(TreeSpec::regular(3), 0, 0) == 1);
  // o and (1;0); the only height-0 vertices within distance 2.
  CHECK(level_set_count(TreeSpec::regular(3), 0, 2) == 2);
  CHECK(brute(TreeSpec::regular(3), 0, 2) == 2);
  for (const auto& t : {TreeSpec::regular(3), TreeSpec::regular(4), TreeSpec::line(),
                        TreeSpec(ExplicitCoreFamily{3, 3, {}, 2})}) {
    for (std::int64_t k = -3; k <= 3; ++k) {
      for (std::int64_t r = 0; r <= 7; ++r) CHECK(level_set_count(t, k, r) == brute(t, k, r));
    }
  }
}

TEST_CASE("f_set examples") {
  CHECK(f_set(TreeSpec::regular(3)) == FSet::AllIntegers);
  CHECK(f_set(TreeSpec::line()) == FSet::Empty);
  CHECK(f_set(TreeSpec(ExplicitCoreFamily{4, 3, {}, 2})) == FSet::Empty);
  CHECK(f_set(TreeSpec(RayPeriodicFamily{{2, 2, 3}, {2}})) == FSet::AllIntegers);
  CHECK(f_set(TreeSpec(RayPeriodicFamily{{2}, {3}})) == FSet::Empty);
  CHECK(contains(FSet::AllIntegers, -7));
  CHECK_FALSE(contains(FSet::Empty, 0));
  CHECK_THROWS_AS(f_set(TreeSpec(CallbackFamily{"cb", [](const VertexAddress&) { return 3; }})), UndecidableError);
}

TEST_CASE("level_set_report saturates or grows") {
  const auto grow = level_set_report(TreeSpec::regular(3), 1, 12);
  CHECK(grow.verdict == LevelSetVerdict::Infinite);
  const auto flat = level_set_report(TreeSpec::line(), 1, 12);
  CHECK(flat.verdict == LevelSetVerdict::Finite);
  CHECK(flat.sampled_counts.back().second == 1);
}

TEST_CASE("property: b_xi is the limit of b_{x_n} along the ray") {
  const auto t = TreeSpec::regular(3);
  const auto ball = enumerate_ball(t, 4);
  for (const char* s : {"gamma", "0;(0)", "0;1(0.1)", "2;0(1)", "1;0.1(1.0.0)"}) {
    const auto ray = parse_ray(s);
    REQUIRE(is_valid_ray(t, ray));
    const auto far = ray.vertex_at_depth(40);
    for (const auto& y : ball) {
      CHECK(busemann_ray(ray, y) == busemann_point(far, y));
      CHECK(common_prefix(y, ray) <= y.depth());
    }
  }
}

TEST_CASE("boundary distance") {
  CHECK(boundary_distance(xi0, xi0).is_zero());
  CHECK(boundary_distance(parse_ray("0;(0)"), parse_ray("0;(1)")).exponent == 0);
  CHECK(boundary_distance(parse_ray("0;(0)"), RayAddress::gamma()).exponent == 0);
  CHECK(boundary_distance(parse_ray("3;(0)"), RayAddress::gamma()).exponent == 3);
  CHECK(common_prefix(parse_ray("0;0.0(1)"), parse_ray("0;0.0.0(1)")) == 2);
}
