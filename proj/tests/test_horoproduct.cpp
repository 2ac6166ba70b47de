#include <algorithm>
#include <deque>
#include <unordered_map>

#include "doctest.h"

#include "horo/error.hpp"
#include "horo/horoproduct.hpp"
#include "horo/kernels/kernels.hpp"

using namespace horo;

namespace {

const DLSpec dl33{TreeSpec::regular(3), TreeSpec::regular(3)};
DLVertex D(const char* s) { return parse_dl_vertex(s); }

// Independent BFS over dl_neighbors.
std::unordered_map<DLVertex, std::int64_t, DLVertexHash> plain_bfs(const DLSpec& spec, const DLVertex& from,
                                                                   std::int64_t r) {
  std::unordered_map<DLVertex, std::int64_t, DLVertexHash> seen{{from, 0}};
  std::deque<DLVertex> q{from};
  while (!q.empty()) {
    const auto v = q.front();
    q.pop_front();
    const auto d = seen.at(v);
    if (d == r) continue;
    for (const auto& w : dl_neighbors(spec, v)) {
      if (seen.emplace(w, d + 1).second) q.push_back(w);
    }
  }
  return seen;
}

}  // namespace

TEST_CASE("vertex text") {
  CHECK(D("base") == base_vertex());
  CHECK(to_string(D("0;0|1;")) == "0;0|1;");
  CHECK_THROWS_AS(D("0;0"), ParseError);
  CHECK_THROWS_AS(D("0;0|0;"), HeightMismatch);
}

TEST_CASE("make_vertex examples") {
  CHECK(make_vertex(dl33, {}, {}).height() == 0);
  const auto v = make_vertex(dl33, parse_vertex("0;0"), parse_vertex("1;"));
  CHECK(v.height() == 1);
  CHECK(height(v.x2) == -1);
  try {
    make_vertex(dl33, parse_vertex("0;0"), base_address());
    FAIL("expected HeightMismatch");
  } catch (const HeightMismatch& e) {
    CHECK(e.h1() == 1);
    CHECK(e.h2() == 0);
  }
  CHECK_THROWS_AS(make_vertex(dl33, parse_vertex("1;1"), parse_vertex("0;")), AddressError);
}

TEST_CASE("dl_neighbors examples") {
  CHECK(dl_neighbors(dl33, base_vertex()).size() == 4);
  const DLSpec mixed{TreeSpec::regular(3), TreeSpec::line()};
  for (const auto& v : dl_ball(mixed, 3)) CHECK(dl_neighbors(mixed, v).size() == 3);
  const auto up = dl_up_neighbors(dl33, base_vertex());
  CHECK(std::find(up.begin(), up.end(), D("0;0|1;")) != up.end());
}

TEST_CASE("dl_dist examples") {
  CHECK(dl_dist(D("0;0|1;"), D("0;0|1;")) == 0);
  CHECK(dl_dist(base_vertex(), D("0;0|1;")) == 1);
  CHECK(dl_dist(D("0;0|1;"), D("0;1|1;")) == 2);
}

TEST_CASE("dl_dist_bfs examples") {
  CHECK(dl_dist_bfs(dl33, D("0;0|1;"), D("0;0|1;"), 0) == 0);
  CHECK(dl_dist_bfs(dl33, base_vertex(), D("0;0|1;"), 3) == 1);
  CHECK_FALSE(dl_dist_bfs(dl33, base_vertex(), D("2;|0;0.0"), 1).has_value());
  CHECK(dl_dist_bfs(dl33, base_vertex(), D("2;|0;0.0"), 2) == 2);
}

TEST_CASE("dl_busemann_point examples") {
  CHECK(dl_busemann_point(D("0;0|1;"), base_vertex()) == 0);
  CHECK(dl_busemann_point(D("0;0|1;"), D("0;1|1;")) == 1);
  for (const auto& y : dl_ball(dl33, 2)) CHECK(dl_busemann_point(base_vertex(), y) == dl_dist(base_vertex(), y));
}

TEST_CASE("dl_ball sizes match an independent BFS") {
  CHECK(dl_ball(dl33, 0) == std::vector<DLVertex>{base_vertex()});
  CHECK(dl_ball(dl33, 1).size() == 5);
  // Frozen after the plain BFS below: 15, not 1 + 4 + 12.
  CHECK(dl_ball(dl33, 2).size() == 15);
  const std::size_t expected[] = {1, 5, 15, 39, 92, 208};
  for (std::int64_t r = 0; r <= 5; ++r) {
    CHECK(plain_bfs(dl33, base_vertex(), r).size() == expected[r]);
    CHECK(dl_ball(dl33, r).size() == expected[r]);
  }
  CHECK(dl_bfs_distances(dl33, base_vertex(), 3).size() == 39);
  const auto graph = build_ball_graph(dl33, 6);
  CHECK(graph.size() == 452);
  CHECK(graph.ball_size(5) == 208);
}

TEST_CASE("property: dl_dist matches plain BFS from sampled sources") {
  for (const auto& spec : {dl33, DLSpec{TreeSpec::regular(3), TreeSpec::regular(4)},
                           DLSpec{TreeSpec::regular(3), TreeSpec::line()}}) {
    const auto ball = dl_ball(spec, 3);
    for (std::size_t i = 0; i < ball.size(); i += 3) {
      const auto dist = plain_bfs(spec, ball[i], 6);
      for (const auto& w : ball) {
        REQUIRE(dist.count(w) == 1);
        CHECK(dl_dist(ball[i], w) == dist.at(w));
      }
    }
  }
}

TEST_CASE("property: all_pairs_bfs agrees across ISAs and with dl_dist") {
  const auto graph = build_ball_graph(dl33, 6);
  const auto count = graph.ball_size(3);
  kernels::force_isa(kernels::Isa::Scalar);
  const auto scalar = all_pairs_bfs(graph, count);
  kernels::force_isa(std::nullopt);
  const auto best = all_pairs_bfs(graph, count);
  CHECK(scalar == best);
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = 0; j < count; ++j) CHECK(best[i * count + j] == dl_dist(graph.vertices[i], graph.vertices[j]));
  }
}

TEST_CASE("property: busemann identity equals its definition") {
  const auto ball = dl_ball(dl33, 3);
  for (const auto& z : ball) {
    for (const auto& y : ball) CHECK(dl_busemann_point(z, y) == dl_busemann_by_definition(z, y));
  }
}
