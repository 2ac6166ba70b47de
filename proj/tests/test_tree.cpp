#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "doctest.h"

#include "horo/error.hpp"
#include "horo/tree.hpp"

using namespace horo;

namespace {

VertexAddress V(const char* s) { return parse_vertex(s); }

std::vector<VertexAddress> sorted(std::vector<VertexAddress> v) {
  std::sort(v.begin(), v.end());
  return v;
}

// Plain BFS over neighbors(), independent of enumerate_ball.
std::map<VertexAddress, std::int64_t> bfs_ball(const TreeSpec& spec, std::int64_t r) {
  std::map<VertexAddress, std::int64_t> seen{{base_address(), 0}};
  std::deque<VertexAddress> q{base_address()};
  while (!q.empty()) {
    auto v = q.front();
    q.pop_front();
    if (seen[v] == r) continue;
    for (const auto& w : neighbors(spec, v)) {
      if (seen.emplace(w, seen[v] + 1).second) q.push_back(w);
    }
  }
  return seen;
}

}  // namespace

TEST_CASE("address text round trip") {
  for (const char* s : {"0;", "3;", "0;0", "0;1.0.1", "2;0.1"}) CHECK(to_string(V(s)) == s);
  CHECK(V("1;0") == VertexAddress{1, {0}});
  CHECK_THROWS_AS(V("x"), ParseError);
  CHECK_THROWS_AS(V("-1;"), ParseError);
  CHECK_THROWS_AS(V("0;0..1"), ParseError);
}

TEST_CASE("validate_spec examples") {
  CHECK(validate_spec(TreeSpec::regular(3, 3)).ok());
  const auto line = validate_spec(TreeSpec::line(3));
  REQUIRE_FALSE(line.ok());
  CHECK(line.violations.front().witness == base_address());
  CHECK(line.violations.front().degree == 2);

  ExplicitCoreFamily core{2, 3, {{V("0;0"), 1}}, 3};
  const auto leafy = validate_spec(TreeSpec(core));
  REQUIRE_FALSE(leafy.ok());
  CHECK(leafy.violations.front().witness == V("0;0"));

  CHECK(validate_spec(TreeSpec::line()).ok());
  CHECK_THROWS_AS(TreeSpec::regular(3, 4), SpecError);
  CHECK_THROWS_AS(TreeSpec::regular(1), SpecError);
}

TEST_CASE("degree examples") {
  CHECK(degree(TreeSpec::regular(3), base_address()) == 3);
  CHECK(degree(TreeSpec::regular(3), V("2;")) == 3);
  CHECK(degree(TreeSpec::line(), V("5;")) == 2);
}

TEST_CASE("neighbors examples") {
  const auto t = TreeSpec::regular(3);
  CHECK(neighbors(t, V("0;")) == std::vector<VertexAddress>{V("1;"), V("0;0"), V("0;1")});
  CHECK(sorted(neighbors(t, V("1;"))) == sorted({V("0;"), V("2;"), V("1;0")}));
  CHECK(sorted(neighbors(t, V("0;0"))) == sorted({V("0;"), V("0;0.0"), V("0;0.1")}));
}

TEST_CASE("gamma_ward examples") {
  CHECK(gamma_ward(V("0;0.1")) == V("0;0"));
  CHECK(gamma_ward(V("3;")) == V("4;"));
  CHECK(gamma_ward(V("0;")) == V("1;"));
}

TEST_CASE("dist examples") {
  CHECK(dist(V("2;0"), V("2;0")) == 0);
  CHECK(dist(V("0;0"), V("2;")) == 3);
  CHECK(dist(V("0;0.0"), V("0;0.1")) == 2);
}

TEST_CASE("height examples") {
  CHECK(height(V("0;")) == 0);
  CHECK(height(V("3;")) == -3);
  CHECK(height(V("1;0")) == 0);
}

TEST_CASE("busemann_point examples") {
  CHECK(busemann_point(V("5;1.0"), base_address()) == 0);
  CHECK(busemann_point(V("2;"), V("0;0")) == 1);
  CHECK(busemann_point(V("0;0"), V("0;0.1")) == 0);
}

TEST_CASE("enumerate_ball examples") {
  const auto t = TreeSpec::regular(3);
  CHECK(enumerate_ball(t, 0) == std::vector<VertexAddress>{base_address()});
  CHECK(enumerate_ball(t, 1).size() == 4);
  CHECK(enumerate_ball(t, 2).size() == 10);
}

TEST_CASE("property: ball, degrees and metric agree with plain BFS") {
  std::vector<TreeSpec> specs = {TreeSpec::regular(3), TreeSpec::regular(4), TreeSpec::line(),
                                 TreeSpec(RayPeriodicFamily{{3, 2}, {2, 4}}),
                                 TreeSpec(ExplicitCoreFamily{3, 3, {{V("0;0"), 4}}, 2})};
  for (const auto& t : specs) {
    CAPTURE(to_string(enumerate_ball(t, 1).back()));
    const std::int64_t r = 4;
    const auto bfs = bfs_ball(t, r);
    const auto ball = enumerate_ball(t, r);
    CHECK(ball.size() == bfs.size());
    for (const auto& v : ball) {
      REQUIRE(bfs.count(v) == 1);
      CHECK(dist(base_address(), v) == bfs.at(v));
      CHECK(is_canonical(t, v));
      const auto nb = neighbors(t, v);
      CHECK(static_cast<int>(nb.size()) == degree(t, v));
      const auto up = up_neighbors(t, v);
      CHECK(static_cast<int>(up.size()) == degree(t, v) - 1);
      for (const auto& u : up) CHECK(height(u) == height(v) + 1);
      CHECK(height(gamma_ward(v)) == height(v) - 1);
      CHECK(std::count(nb.begin(), nb.end(), gamma_ward(v)) == 1);
      for (const auto& w : nb) CHECK(dist(v, w) == 1);
    }
    // Distances from one vertex: BFS rooted there.
    const auto small = enumerate_ball(t, 2);
    for (const auto& a : small) {
      for (const auto& b : small) {
        CHECK(dist(a, b) == dist(b, a));
        CHECK(common_prefix(a, b) == common_prefix(b, a));
        CHECK(dist(a, b) == a.depth() + b.depth() - 2 * common_prefix(a, b));
        for (const auto& c : small) CHECK(dist(a, c) <= dist(a, b) + dist(b, c));
      }
    }
  }
}

TEST_CASE("property: busemann_point is 1-Lipschitz and vanishes at o") {
  const auto t = TreeSpec::regular(3);
  const auto ball = enumerate_ball(t, 3);
  for (const auto& z : ball) {
    CHECK(busemann_point(z, base_address()) == 0);
    for (const auto& y : ball) {
      for (const auto& w : neighbors(t, y)) CHECK(std::abs(busemann_point(z, y) - busemann_point(z, w)) <= 1);
    }
  }
}

TEST_CASE("require_canonical rejects illegal letters") {
  const auto t = TreeSpec::regular(3);
  CHECK(is_canonical(t, V("1;0")));
  CHECK_FALSE(is_canonical(t, V("1;1")));
  CHECK_FALSE(is_canonical(t, V("0;2")));
  CHECK_THROWS_AS(require_canonical(t, V("0;0.2")), AddressError);
  CHECK_FALSE(is_canonical(TreeSpec::line(), V("1;0")));
  CHECK(is_canonical(TreeSpec::line(), V("0;0.0")));
}
