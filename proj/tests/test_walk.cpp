#include <set>
#include <sstream>

#include "doctest.h"

#include "horo/error.hpp"
#include "horo/walk.hpp"

using namespace horo;

namespace {

const DLSpec dl33{TreeSpec::regular(3), TreeSpec::regular(3)};

WalkConfig cfg(Rational p, std::uint64_t steps, std::uint64_t trajectories = 1, std::uint64_t seed = 7) {
  WalkConfig c;
  c.spec = dl33;
  c.p_up = p;
  c.steps = steps;
  c.trajectories = trajectories;
  c.seed = seed;
  return c;
}

}  // namespace

TEST_CASE("rationals") {
  CHECK(parse_rational("4/5") == Rational{4, 5});
  CHECK(parse_rational("8/10") == Rational{4, 5});
  CHECK(parse_rational("0.8") == Rational{4, 5});
  CHECK(parse_rational("1") == Rational{1, 1});
  CHECK(parse_rational("2.5e-1") == Rational{1, 4});
  CHECK(rational_from_double(0.2) == Rational{1, 5});
  CHECK(to_string(Rational{4, 5}) == "4/5");
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational("abc"), ParseError);
}

TEST_CASE("bounded draws stay in range and cover it") {
  WalkRng rng(1, 0);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 2000; ++i) {
    const auto x = rng.bounded(5);
    CHECK(x < 5);
    seen.insert(x);
  }
  CHECK(seen.size() == 5);
  WalkRng a(3, 1), b(3, 1), c(3, 2);
  CHECK(a.bounded(1000000) == b.bounded(1000000));
  CHECK(WalkRng(3, 1).bounded(1u << 30) != c.bounded(1u << 30));
}

TEST_CASE("step examples") {
  const auto up = dl_up_neighbors(dl33, base_vertex());
  const auto down = dl_down_neighbors(dl33, base_vertex());
  REQUIRE(up.size() == 2);
  REQUIRE(down.size() == 2);
  WalkRng rng(11, 0);
  int first = 0;
  const int trials = 4000;
  for (int i = 0; i < trials; ++i) {
    const auto v = step(dl33, base_vertex(), {1, 1}, rng);
    REQUIRE((v == up[0] || v == up[1]));
    first += v == up[0];
  }
  CHECK(std::abs(first - trials / 2) < 200);
  for (int i = 0; i < 50; ++i) {
    const auto v = step(dl33, base_vertex(), {0, 1}, rng);
    CHECK((v == down[0] || v == down[1]));
  }
  WalkRng r1(5, 0), r2(5, 0);
  DLVertex a = base_vertex(), b = base_vertex();
  for (int i = 0; i < 100; ++i) {
    a = step(dl33, a, {4, 5}, r1);
    b = step(dl33, b, {4, 5}, r2);
  }
  CHECK(a == b);
}

TEST_CASE("simulate examples") {
  const auto zero = simulate(cfg({1, 2}, 0));
  REQUIRE(zero.trajectories.size() == 1);
  REQUIRE(zero.trajectories[0].records.size() == 1);
  CHECK(zero.trajectories[0].records[0] == WalkRecord{0, 0, 0, {}});

  const auto up = simulate(cfg({1, 1}, 500));
  CHECK(up.trajectories[0].last.dist == 500);
  CHECK(up.trajectories[0].last.height == 500);
  const auto down = simulate(cfg({0, 1}, 500));
  CHECK(down.trajectories[0].last.dist == 500);
  CHECK(down.trajectories[0].last.height == -500);
}

TEST_CASE("the incremental walker reproduces step() and busemann_ray") {
  for (Rational p : {Rational{1, 2}, Rational{4, 5}, Rational{1, 5}}) {
    auto c = cfg(p, 3000, 2, 99);
    c.probes = {{1, RayAddress::gamma()}, {2, RayAddress(0, {}, {0})}, {1, RayAddress(1, {0}, {1, 0})},
                {2, RayAddress(2, {0}, {1})}};
    const auto result = simulate(c);
    for (const auto& t : result.trajectories) {
      WalkRng rng(c.seed, t.index);
      DLVertex v = base_vertex();
      REQUIRE(t.records.size() == c.steps + 1);
      for (std::uint64_t n = 0; n <= c.steps; ++n) {
        if (n > 0) v = step(c.spec, v, p, rng);
        const auto& r = t.records[n];
        REQUIRE(r.n == n);
        REQUIRE(r.dist == dl_dist(base_vertex(), v));
        REQUIRE(r.height == v.height());
        for (std::size_t i = 0; i < c.probes.size(); ++i) {
          const auto& x = c.probes[i].tree == 1 ? v.x1 : v.x2;
          REQUIRE(r.probes[i] == busemann_ray(c.probes[i].ray, x));
        }
      }
    }
  }
}

TEST_CASE("estimate_speed examples") {
  CHECK(estimate_speed(simulate(cfg({1, 1}, 1000, 3))).mean == 1.0);
  CHECK(estimate_speed(simulate(cfg({0, 1}, 1000, 3))).mean == 1.0);
  CHECK_THROWS(estimate_speed(simulate(cfg({1, 2}, 1))));
  const double small = estimate_speed(simulate(cfg({1, 2}, 20000, 20))).mean;
  CHECK(small < 0.05);
}

TEST_CASE("kl_report examples") {
  auto c = cfg({4, 5}, 100000, 5);
  c.record_stride = 0;
  c.probes = {{2, RayAddress(0, {}, {0})}, {1, RayAddress(0, {}, {0})}};
  const auto kl = kl_report(simulate(c));
  CHECK_FALSE(kl.zero_speed);
  CHECK(kl.escape_sign == 1);
  CHECK(kl.height_slope.mean > 0);
  CHECK(std::abs(kl.height_slope.mean - kl.speed.mean) <= 0.05);
  CHECK(kl.probes[0].opposite);
  CHECK_FALSE(kl.probes[1].opposite);
  CHECK(kl.ok());

  const auto one = kl_report(simulate(cfg({1, 1}, 2000, 2)));
  CHECK(one.height_slope.mean == 1.0);
  CHECK(one.speed.mean == 1.0);

  auto half = cfg({1, 2}, 50000, 10);
  half.record_stride = 0;
  const auto z = kl_report(simulate(half));
  CHECK(z.zero_speed);
  CHECK(z.ok());
}

TEST_CASE("config validation and truncation") {
  CHECK_THROWS_AS(simulate(cfg({3, 2}, 10)), SpecError);
  CHECK_THROWS_AS(simulate(cfg({1, 2}, 10, 0)), SpecError);
  auto bad = cfg({1, 2}, 10);
  bad.probes = {{2, RayAddress(1, {}, {1})}};
  CHECK_THROWS_AS(simulate(bad), AddressError);
  auto capped = cfg({1, 2}, 100, 3);
  capped.max_total_steps = 150;
  const auto r = simulate(capped);
  CHECK(r.truncated);
  CHECK(r.trajectories.size() == 2);
  CHECK(r.trajectories[1].steps_done == 50);
}

TEST_CASE("csv output") {
  auto c = cfg({4, 5}, 4);
  c.probes = {{2, RayAddress::gamma()}};
  const auto r = simulate(c);
  std::ostringstream out;
  write_csv(out, r, r.trajectories[0]);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "n,dist,height,probe_0");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 5);
}
