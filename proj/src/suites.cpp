#include "horo/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <map>
#include <set>
#include <stdexcept>

#include "horo/error.hpp"
#include "horo/kernels/kernels.hpp"

namespace horo {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Rand {
  WalkRng rng;
  Rand(std::uint64_t seed, std::uint64_t stream) : rng(seed, stream) {}
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(rng.bounded(static_cast<std::uint64_t>(hi - lo + 1)));
  }
  template <class T>
  const T& pick(const std::vector<T>& xs) {
    return xs[rng.bounded(xs.size())];
  }
};

DLSpec dl(int d1, int d2) { return {TreeSpec::regular(d1), TreeSpec::regular(d2)}; }

void add(SuiteResult& s, std::string name, bool passed, Json detail = Json::object()) {
  s.checks.push_back({std::move(name), passed, std::move(detail)});
}

RayAddress random_ray(const TreeSpec& spec, Rand& rand, bool allow_gamma) {
  if (allow_gamma && rand.between(0, 4) == 0) return RayAddress::gamma();
  while (true) {
    const std::int64_t branch = rand.between(0, 3);
    const auto prefix_len = static_cast<std::size_t>(rand.between(0, 3));
    const auto cycle_len = static_cast<std::size_t>(rand.between(1, 3));
    std::vector<Label> word;
    VertexAddress v = ray_vertex(branch);
    for (std::size_t i = 0; i < prefix_len + cycle_len; ++i) {
      const int bound = spec.child_count(v);
      if (bound == 0) break;
      const auto c = static_cast<Label>(rand.between(0, bound - 1));
      word.push_back(c);
      v.suffix.push_back(c);
    }
    if (word.size() != prefix_len + cycle_len) continue;
    RayAddress ray(branch, std::vector<Label>(word.begin(), word.begin() + static_cast<std::ptrdiff_t>(prefix_len)),
                   std::vector<Label>(word.begin() + static_cast<std::ptrdiff_t>(prefix_len), word.end()));
    if (is_valid_ray(spec, ray)) return ray;
  }
}

Json witness_json(const DLVertex& v, const DLVertex& w, std::int64_t got, std::int64_t expected) {
  return {{"v", to_string(v)}, {"w", to_string(w)}, {"value", got}, {"expected", expected}};
}

// ---------------------------------------------------------------- metric-oracle

Json metric_case(const DLSpec& spec, const std::string& label, std::int64_t r, std::size_t hashed_source_target, Rand& rand,
                 bool& ok) {
  const auto t0 = Clock::now();
  const auto graph = build_ball_graph(spec, 2 * r);
  const std::size_t count = graph.ball_size(r);
  const auto bfs = all_pairs_bfs(graph, count);
  std::size_t mismatches = 0;
  std::size_t bound_failures = 0;
  Json witness = nullptr;
  for (std::size_t i = 0; i < count; ++i) {
    const auto& v = graph.vertices[i];
    for (std::size_t j = 0; j < count; ++j) {
      const auto& w = graph.vertices[j];
      const std::int64_t d = dl_dist(v, w);
      if (d != bfs[i * count + j]) {
        if (mismatches++ == 0) witness = witness_json(v, w, d, bfs[i * count + j]);
      }
      const std::int64_t lower = std::max({dist(v.x1, w.x1), dist(v.x2, w.x2), std::abs(v.height() - w.height())});
      if (d < lower) ++bound_failures;
    }
  }
  // Queue BFS on the ball graph from every source, independent of the bitset kernel.
  std::size_t plain_mismatches = 0;
  std::vector<std::int32_t> level(graph.size());
  std::vector<std::uint32_t> queue(graph.size());
  for (std::size_t i = 0; i < count; ++i) {
    std::fill(level.begin(), level.end(), -1);
    std::size_t head = 0, tail = 0;
    queue[tail++] = static_cast<std::uint32_t>(i);
    level[i] = 0;
    while (head < tail) {
      const auto u = queue[head++];
      for (auto e = graph.offsets[u]; e < graph.offsets[u + 1]; ++e) {
        const auto t = graph.targets[e];
        if (level[t] < 0) {
          level[t] = level[u] + 1;
          queue[tail++] = t;
        }
      }
    }
    for (std::size_t j = 0; j < count; ++j) {
      if (level[j] != dl_dist(graph.vertices[i], graph.vertices[j]) && plain_mismatches++ == 0 && witness.is_null()) {
        witness = witness_json(graph.vertices[i], graph.vertices[j], dl_dist(graph.vertices[i], graph.vertices[j]), level[j]);
      }
    }
  }
  // Hash-map BFS straight from dl_neighbors, no ball graph, from a stride of sources.
  std::size_t hashed_sources = 0;
  std::size_t hashed_mismatches = 0;
  const std::size_t stride = std::max<std::size_t>(1, count / hashed_source_target);
  for (std::size_t i = 0; i < count; i += stride) {
    ++hashed_sources;
    const auto dist = dl_bfs_distances(spec, graph.vertices[i], 2 * r);
    for (std::size_t j = 0; j < count; ++j) {
      const auto it = dist.find(graph.vertices[j]);
      if (it == dist.end() || it->second != dl_dist(graph.vertices[i], graph.vertices[j])) ++hashed_mismatches;
    }
  }
  // dl_dist_bfs itself on a sample.
  std::size_t sampled = 0;
  std::size_t sample_mismatches = 0;
  for (int s = 0; s < 24; ++s) {
    const auto& v = graph.vertices[rand.rng.bounded(count)];
    const auto& w = graph.vertices[rand.rng.bounded(count)];
    const auto d = dl_dist_bfs(spec, v, w, 2 * r);
    ++sampled;
    if (!d || *d != dl_dist(v, w)) {
      if (sample_mismatches++ == 0 && witness.is_null()) witness = witness_json(v, w, dl_dist(v, w), d.value_or(-1));
    }
  }
  ok = ok && mismatches == 0 && plain_mismatches == 0 && hashed_mismatches == 0 && bound_failures == 0 && sample_mismatches == 0;
  return {{"spec", label},
          {"radius", r},
          {"ball_size", count},
          {"graph_size", graph.size()},
          {"pairs", count * count},
          {"mismatches", mismatches},
          {"queue_bfs_mismatches", plain_mismatches},
          {"hashed_bfs_sources", hashed_sources},
          {"hashed_bfs_mismatches", hashed_mismatches},
          {"lower_bound_failures", bound_failures},
          {"sampled_plain_bfs", sampled},
          {"sampled_mismatches", sample_mismatches},
          {"isa", kernels::to_string(kernels::active_isa())},
          {"witness", witness},
          {"seconds", seconds_since(t0)}};
}

void metric_oracle(SuiteResult& s, const SuiteOptions& o) {
  const std::int64_t r = o.radius.value_or(6);
  Rand rand(o.seed, 1);
  bool ok33 = true;
  auto d33 = metric_case(dl(3, 3), "DL(3,3)", r, 64, rand, ok33);
  add(s, "dl_dist equals BFS on all pairs of ball(" + std::to_string(r) + ") in DL(3,3)", ok33, d33);
  bool ok34 = true;
  auto d34 = metric_case(dl(3, 4), "DL(3,4)", std::max<std::int64_t>(r - 1, 0), 16, rand, ok34);
  add(s, "dl_dist equals BFS on all pairs of ball(" + std::to_string(std::max<std::int64_t>(r - 1, 0)) +
             ") in DL(3,4)",
      ok34, d34);
}

// ---------------------------------------------------------------- lemma41

void lemma41(SuiteResult& s, const SuiteOptions& o) {
  const std::int64_t r = o.radius.value_or(5);
  const auto spec = dl(3, 3);
  const auto graph = build_ball_graph(spec, 2 * r);
  const std::size_t count = graph.ball_size(r);
  const auto bfs = all_pairs_bfs(graph, count);
  std::size_t bfs_mismatches = 0;
  std::size_t def_mismatches = 0;
  Json witness = nullptr;
  for (std::size_t i = 0; i < count; ++i) {
    const auto& z = graph.vertices[i];
    for (std::size_t j = 0; j < count; ++j) {
      const auto& y = graph.vertices[j];
      const std::int64_t identity = dl_busemann_point(z, y);
      const std::int64_t by_bfs = bfs[i * count + j] - bfs[i * count];
      if (identity != by_bfs && bfs_mismatches++ == 0) witness = witness_json(z, y, identity, by_bfs);
      if (identity != dl_busemann_by_definition(z, y)) ++def_mismatches;
    }
  }
  add(s, "product identity equals d(z,y) - d(z,o) on all pairs of ball(" + std::to_string(r) + ")",
      bfs_mismatches == 0 && def_mismatches == 0,
      {{"radius", r},
       {"pairs", count * count},
       {"mismatches_vs_bfs", bfs_mismatches},
       {"mismatches_vs_formula", def_mismatches},
       {"witness", witness}});
}

// ---------------------------------------------------------------- tree-lemmas

struct TreeCase {
  std::string label;
  TreeSpec spec;
  std::vector<RayAddress> rays;
};

std::vector<TreeCase> tree_cases(std::uint64_t seed) {
  std::vector<TreeCase> out;
  int stream = 100;
  for (int d : {3, 4}) {
    TreeCase c{"Regular(" + std::to_string(d) + ")", TreeSpec::regular(d), {}};
    Rand rand(seed, static_cast<std::uint64_t>(stream++));
    while (c.rays.size() < 50) c.rays.push_back(random_ray(c.spec, rand, false));
    out.push_back(std::move(c));
  }
  return out;
}

void tree_lemmas(SuiteResult& s, const SuiteOptions& o) {
  const std::int64_t r = o.radius.value_or(5);
  const std::int64_t window = 100;
  for (const auto& c : tree_cases(o.seed)) {
    const auto ball = enumerate_ball(c.spec, r);
    // Pointwise stabilization of b_{x_n} along each ray, x_n the ray vertex at depth n.
    std::size_t violations = 0;
    std::int64_t observed = 0;
    Json witness = nullptr;
    std::vector<RayAddress> rays = c.rays;
    rays.push_back(RayAddress::gamma());
    for (const auto& ray : rays) {
      std::int64_t last_bad = -1;
      for (std::int64_t n = 0; n <= r + window; ++n) {
        const auto x = ray.vertex_at_depth(n);
        for (const auto& y : ball) {
          if (busemann_point(x, y) != busemann_ray(ray, y)) {
            last_bad = n;
            if (n >= r && violations++ == 0) {
              witness = {{"ray", to_string(ray)}, {"n", n}, {"y", to_string(y)}};
            }
            break;
          }
        }
      }
      observed = std::max(observed, last_bad + 1);
    }
    add(s, c.label + ": b_{x_n} -> b_xi on ball(" + std::to_string(r) + ") for 50 rays and gamma",
        violations == 0 && rays.size() == 51,
        {{"rays", rays.size()},
         {"window", Json::array({r, r + window})},
         {"observed_stabilization", observed},
         {"violations", violations},
         {"witness", witness}});

    // Bounded-height divergent sequences climb away along gamma.
    std::size_t families = 0;
    std::size_t failures = 0;
    Json fail = nullptr;
    Rand rand(o.seed, 200);
    for (std::int64_t k = -3; k <= 3; ++k) {
      for (std::uint64_t stride : {1u, 5u}) {
        LevelSetEnumerator e(c.spec, k);
        std::vector<std::int64_t> ns;
        for (std::int64_t n = 0; n < window; ++n) {
          if (height(e.current()) != k) ++failures;
          ns.push_back(common_prefix(e.current(), RayAddress::gamma()));
          e.seek(e.position() + stride);
        }
        ++families;
        if (!std::is_sorted(ns.begin(), ns.end()) || ns.back() <= ns.front()) {
          if (failures++ == 0) fail = {{"level", k}, {"stride", stride}};
        }
      }
      // Random words at strictly increasing depth.
      std::vector<std::int64_t> ns;
      for (std::int64_t n = 0; n < window; ++n) {
        VertexAddress v = ray_vertex(std::max<std::int64_t>(0, -k) + n);
        while (height(v) < k) v.suffix.push_back(static_cast<Label>(rand.between(0, c.spec.child_count(v) - 1)));
        ns.push_back(common_prefix(v, RayAddress::gamma()));
      }
      ++families;
      if (!std::is_sorted(ns.begin(), ns.end()) || ns.back() <= ns.front()) {
        if (failures++ == 0) fail = {{"level", k}, {"random", true}};
      }
    }
    add(s, c.label + ": N(x_n, gamma) grows along bounded-height divergent sequences", failures == 0,
        {{"families", families}, {"window", window}, {"witness", fail}});

    // |h(x_n) - h(x)| - |h(x_n) - h(y)| settles on h(y) - h(x) or h(x) - h(y).
    const auto small = enumerate_ball(c.spec, 3);
    std::size_t sequences = 0;
    std::size_t bad = 0;
    Json bad_witness = nullptr;
    auto run = [&](const std::string& name, auto term, int sign, std::int64_t n0) {
      ++sequences;
      for (std::int64_t n = n0; n <= n0 + window; ++n) {
        const std::int64_t hn = height(term(n));
        for (const auto& x : small) {
          for (const auto& y : small) {
            const std::int64_t q = std::abs(hn - height(x)) - std::abs(hn - height(y));
            const std::int64_t predicted = sign * (height(y) - height(x));
            if (q != predicted) {
              if (bad++ == 0) bad_witness = {{"sequence", name}, {"n", n}, {"x", to_string(x)}, {"y", to_string(y)}};
              return;
            }
          }
        }
      }
    };
    for (const auto& ray : rays) {
      if (ray.is_gamma()) {
        run("gamma", [&](std::int64_t n) { return ray_vertex(n); }, -1, 3);
      } else {
        run(to_string(ray), [&](std::int64_t n) { return ray.vertex_at_depth(n); }, 1, 2 * ray.branch() + 3);
      }
    }
    run("climb to gamma", [](std::int64_t n) { return VertexAddress{n, std::vector<Label>(2 * n, 0)}; }, 1, 3);
    add(s, c.label + ": height differences settle on the predicted value", bad == 0,
        {{"sequences", sequences}, {"pairs", small.size() * small.size()}, {"witness", bad_witness}});
  }
}

// ---------------------------------------------------------------- boundary-functions

void boundary_functions(SuiteResult& s, const SuiteOptions& o) {
  const auto spec = dl(3, 3);
  const auto catalog = boundary_catalog();
  const std::int64_t r = o.radius.value_or(4);

  std::size_t invalid = 0;
  std::size_t nonzero = 0;
  std::size_t round_trip = 0;
  for (const auto& f : catalog) {
    if (!is_valid(spec, f)) ++invalid;
    if (eval(f, base_vertex()) != 0) ++nonzero;
    if (parse_boundary_function(to_string(f)) != f) ++round_trip;
    if (!std::holds_alternative<InteriorPoint>(f)) {
      const DLBoundaryPoint p = std::visit(
          [](const auto& x) -> DLBoundaryPoint {
            if constexpr (std::is_same_v<std::decay_t<decltype(x)>, InteriorPoint>) {
              return ZPoint{};
            } else {
              return x;
            }
          },
          f);
      const auto back = boundary_point_from_hm(hm_coordinates(p));
      if (!back || theta(*back) != f) ++round_trip;
    }
  }
  add(s, "catalog of " + std::to_string(catalog.size()) + " descriptors is valid", invalid == 0 && catalog.size() >= 40,
      {{"size", catalog.size()}, {"invalid", invalid}});
  add(s, "every function vanishes at the base point", nonzero == 0, {{"failures", nonzero}});
  add(s, "text and HM-coordinate round trips", round_trip == 0, {{"failures", round_trip}});

  const auto graph = build_ball_graph(spec, 2 * r);
  const std::size_t count = graph.ball_size(r);
  const auto bfs = all_pairs_bfs(graph, count);
  const std::vector<DLVertex> ball(graph.vertices.begin(), graph.vertices.begin() + static_cast<std::ptrdiff_t>(count));
  std::size_t lipschitz_failures = 0;
  Json lip_witness = nullptr;
  for (const auto& f : catalog) {
    const auto values = value_table(f, ball);
    for (std::size_t i = 0; i < count; ++i) {
      const std::span<const std::int32_t> row(bfs.data() + i * count, count);
      const auto excess = kernels::lipschitz_excess(values[i], values, row);
      if (excess > 0) {
        if (lipschitz_failures++ == 0) lip_witness = {{"function", to_string(f)}, {"vertex", to_string(ball[i])}};
        break;
      }
    }
  }
  add(s, "1-Lipschitz on ball(" + std::to_string(r) + ")", lipschitz_failures == 0,
      {{"pairs_per_function", count * count}, {"failures", lipschitz_failures}, {"witness", lip_witness}});

  const auto small = dl_ball(spec, 3);
  std::map<std::vector<std::int32_t>, std::string> seen;
  std::size_t collisions = 0;
  Json collision = nullptr;
  for (const auto& f : catalog) {
    auto [it, inserted] = seen.emplace(value_table(f, small), to_string(f));
    if (!inserted && collisions++ == 0) collision = Json::array({it->second, to_string(f)});
  }
  add(s, "pairwise distinct on ball(3)", collisions == 0,
      {{"ball_size", small.size()}, {"collisions", collisions}, {"witness", collision}});

  // T1(z_n) agrees with h2 out to radius about n + 1, so deep ray vertices need a bigger ball.
  auto extended = catalog;
  extended.push_back(T1Point{ray_vertex(2)});
  extended.push_back(T2Point{ray_vertex(2)});
  extended.push_back(ZPoint{3});
  extended.push_back(ZPoint{-3});
  const std::vector<DLVertex> ball4(graph.vertices.begin(), graph.vertices.begin() + static_cast<std::ptrdiff_t>(count));
  Json coincide_on_3 = Json::array();
  std::size_t unseparated = 0;
  for (std::size_t i = 0; i < extended.size(); ++i) {
    for (std::size_t j = i + 1; j < extended.size(); ++j) {
      if (value_table(extended[i], ball4) == value_table(extended[j], ball4)) ++unseparated;
      if (value_table(extended[i], small) == value_table(extended[j], small)) {
        coincide_on_3.push_back(Json::array({to_string(extended[i]), to_string(extended[j])}));
      }
    }
  }
  add(s, "catalog plus deep ray vertices and Z(+-3) is pairwise distinct on ball(4)", unseparated == 0,
      {{"size", extended.size()}, {"unseparated", unseparated}, {"coincide_on_ball3", coincide_on_3}});
}

// ---------------------------------------------------------------- isomorphism

void isomorphism(SuiteResult& s, const SuiteOptions& o) {
  std::size_t redrawn = 0;
  const auto cases = random_family_cases(o.seed, 240, &redrawn);
  const std::int64_t r = o.radius.value_or(4);
  const auto t0 = Clock::now();
  const auto report = isomorphism_check(cases, r, 50);
  const double elapsed = seconds_since(t0);

  std::map<std::string, std::size_t> kinds;
  std::map<std::string, std::size_t> verdicts;
  for (const auto& c : cases) ++kinds[kind_name(c.family)];
  for (const auto& e : report.entries) ++verdicts[to_string(e.symbolic)];
  Json failures = Json::array();
  for (const auto& e : report.entries) {
    if (!e.agree && failures.size() < 5) failures.push_back({{"label", e.label}, {"detail", e.detail}});
  }
  add(s, "at least 200 families covering all six kinds on DL(3,3) and DL(3,4)",
      cases.size() >= 200 && kinds.size() == 6,
      {{"families", cases.size()}, {"kinds", kinds}, {"seed", o.seed}, {"redrawn_interleaves", redrawn}});
  add(s, "symbolic and empirical verdicts and limits agree (window 50, radius " + std::to_string(r) + ")",
      report.disagreed == 0 && report.undecided == 0 && report.agreed == cases.size(),
      {{"agreed", report.agreed},
       {"disagreed", report.disagreed},
       {"undecided", report.undecided},
       {"verdicts", verdicts},
       {"failures", failures},
       {"seconds", elapsed}});
}

// ---------------------------------------------------------------- fset

void fset(SuiteResult& s, const SuiteOptions& o) {
  const std::int64_t max_r = o.radius.value_or(12);
  struct Case {
    std::string label;
    TreeSpec spec;
    FSet expected;
  };
  std::vector<Case> cases = {
      {"Regular(3)", TreeSpec::regular(3), FSet::AllIntegers},
      {"Line", TreeSpec::line(), FSet::Empty},
      {"ExplicitCore(radius 4, core 3, tail 2)", TreeSpec(ExplicitCoreFamily{4, 3, {}, 2}), FSet::Empty},
      {"ExplicitCore(radius 3, core 2, tail 3)", TreeSpec(ExplicitCoreFamily{3, 2, {}, 3}), FSet::AllIntegers},
  };
  for (const auto& c : cases) {
    const FSet verdict = f_set(c.spec);
    bool ok = verdict == c.expected;
    Json samples = Json::array();
    for (std::int64_t k = -2; k <= 2; ++k) {
      const auto report = level_set_report(c.spec, k, max_r);
      const auto& counts = report.sampled_counts;
      const bool grows = report.verdict == LevelSetVerdict::Infinite;
      const bool saturated = counts.size() >= 3 && counts.back().second == counts[counts.size() - 3].second;
      ok = ok && (verdict == FSet::AllIntegers ? grows : saturated && !grows);
      samples.push_back({{"k", k},
                         {"count_R-2", counts.size() >= 3 ? counts[counts.size() - 3].second : 0},
                         {"count_R", counts.back().second},
                         {"oracle", grows ? "infinite" : "finite"}});
    }
    add(s, "f_set(" + c.label + ") matches the level-set oracle up to R=" + std::to_string(max_r), ok,
        {{"f_set", to_string(verdict)}, {"samples", samples}});
  }

  const DLSpec with_line{TreeSpec::regular(3), TreeSpec::line()};
  std::size_t wrongly_realizable = 0;
  std::size_t witnesses_built = 0;
  for (std::int64_t k = -20; k <= 20; ++k) {
    if (realizability(with_line, ZPoint{k}).realizable || realizability_literal(with_line, ZPoint{k}).realizable) {
      ++wrongly_realizable;
    }
    if (std::abs(k) <= 3) {
      try {
        family_terms(with_line, {HorocyclicFamily{k, 0, 1}}, 0, 1);
        ++witnesses_built;
      } catch (const FamilyError&) {
      }
    }
  }
  add(s, "Z(k) not realizable on DL(Regular(3), Line) for |k| <= 20",
      wrongly_realizable == 0 && witnesses_built == 0,
      {{"realizable", wrongly_realizable}, {"horocyclic_witnesses_built", witnesses_built}});

  const auto spec = dl(3, 3);
  Json rows = Json::array();
  bool ok = true;
  for (std::int64_t k = -5; k <= 5; ++k) {
    const bool real = realizability(spec, ZPoint{k}).realizable && realizability_literal(spec, ZPoint{k}).realizable;
    const SequenceFamily witness{HorocyclicFamily{k, 0, 1}};
    const auto cls = classify_hm(spec, witness);
    const BoundaryFunction target = ZPoint{k};
    const auto n0 = cls.stabilization_index.value_or(0);
    const auto emp = empirical_pointwise_check(spec, witness, n0, n0 + 50, 4, target);
    const bool row_ok = real && cls.hm_limit == target && emp.stabilized();
    ok = ok && row_ok;
    rows.push_back({{"k", k}, {"realizable", real}, {"window", Json::array({n0, n0 + 50})}, {"converges", emp.stabilized()}});
  }
  add(s, "Z(k) realizable on DL(3,3) for |k| <= 5 with horocyclic witnesses converging to b_k", ok, {{"rows", rows}});

  const RayAddress delta(0, {}, {0});
  const SequenceFamily march{RadialRayFamily{2, delta, 0, 1, 1}};
  const auto cls = classify_hm(with_line, march);
  const auto n0 = cls.stabilization_index.value_or(0);
  const auto emp = empirical_pointwise_check(with_line, march, n0, n0 + 50, 4);
  const bool c2_ok = realizability(with_line, C2Point{delta}).realizable &&
                     cls.hm_limit == BoundaryFunction{C2Point{delta}} && emp.stabilized();
  add(s, "C2 at the far end of the line is realizable on DL(Regular(3), Line)", c2_ok,
      {{"limit", cls.hm_limit ? to_string(*cls.hm_limit) : "none"}, {"converges", emp.stabilized()}});

  std::size_t monotone_failures = 0;
  std::vector<DLBoundaryPoint> points;
  for (std::int64_t k = -4; k <= 4; ++k) points.push_back(ZPoint{k});
  for (const auto& v : enumerate_ball(TreeSpec::regular(3), 2)) points.push_back(T1Point{v});
  for (const auto& v : enumerate_ball(TreeSpec::line(), 2)) points.push_back(T2Point{v});
  points.push_back(C1Point{RayAddress::gamma()});
  points.push_back(C2Point{RayAddress::gamma()});
  points.push_back(C2Point{delta});
  for (const auto& p : points) {
    if (realizability(with_line, p).realizable && !realizability(spec, p).realizable) ++monotone_failures;
  }
  add(s, "replacing Line by Regular(3) never loses realizability", monotone_failures == 0,
      {{"points", points.size()}, {"failures", monotone_failures}});
}

// ---------------------------------------------------------------- closure

void closure(SuiteResult& s, const SuiteOptions& o) {
  const std::int64_t r = o.radius.value_or(4);
  const auto spec = dl(3, 3);
  const auto ball = dl_ball(spec, r);
  std::int64_t max_h = 0;
  for (const auto& v : ball) max_h = std::max(max_h, std::abs(v.height()));

  auto run = [&](const std::string& name, const std::vector<BoundaryFunction>& seq, const BoundaryFunction& target,
                 std::optional<std::size_t> predicted) {
    const auto rep = boundary_limit_check(spec, seq, target, r);
    const bool ok = rep.stabilized && (!predicted || rep.stabilization_index == *predicted);
    Json detail = to_json(rep);
    detail["target"] = to_string(target);
    detail["terms"] = seq.size();
    if (predicted) detail["predicted_index"] = *predicted;
    add(s, name, ok, detail);
  };

  std::vector<BoundaryFunction> up;
  std::vector<BoundaryFunction> down;
  for (std::int64_t k = 1; k <= 30; ++k) {
    up.push_back(ZPoint{k});
    down.push_back(ZPoint{-k});
  }
  // c_k(y) = h1(y) exactly when k >= h1(y): the last mismatch is at k = max height.
  run("Z(k) -> h1 as k -> +inf", up, C1Point{RayAddress::gamma()}, static_cast<std::size_t>(max_h - 1));
  run("Z(k) -> h2 as k -> -inf", down, C2Point{RayAddress::gamma()}, static_cast<std::size_t>(max_h - 1));

  const RayAddress xi1(0, {}, {0});
  const RayAddress xi2(1, {0}, {1, 0});
  std::vector<BoundaryFunction> t1_ray, t2_ray, t1_down, t2_down;
  for (std::int64_t n = 0; n < 40; ++n) {
    t1_ray.push_back(T1Point{xi1.vertex_at_depth(n)});
    t2_ray.push_back(T2Point{xi2.vertex_at_depth(n)});
    t1_down.push_back(T1Point{ray_vertex(n)});
    t2_down.push_back(T2Point{ray_vertex(n)});
  }
  run("T1 along a ray -> C1 of that ray", t1_ray, C1Point{xi1}, std::nullopt);
  run("T2 along a ray -> C2 of that ray", t2_ray, C2Point{xi2}, std::nullopt);
  run("T1 down gamma1 -> h2", t1_down, C2Point{RayAddress::gamma()}, std::nullopt);
  run("T2 down gamma2 -> h1", t2_down, C1Point{RayAddress::gamma()}, std::nullopt);

  for (std::int64_t k : {-2, 0, 1, 3}) {
    std::vector<BoundaryFunction> t1_level, t2_level;
    LevelSetEnumerator e1(spec.first, k);
    LevelSetEnumerator e2(spec.second, k);
    for (int n = 0; n < 400; ++n) {
      t1_level.push_back(T1Point{e1.current()});
      t2_level.push_back(T2Point{e2.current()});
      e1.advance();
      e2.advance();
    }
    run("T1 through H_" + std::to_string(k) + " -> Z(" + std::to_string(k) + ")", t1_level, ZPoint{k}, std::nullopt);
    run("T2 through H_" + std::to_string(k) + " -> Z(" + std::to_string(-k) + ")", t2_level, ZPoint{-k},
        std::nullopt);
  }

  std::vector<BoundaryFunction> c1_seq, c2_seq;
  for (std::size_t n = 0; n < 30; ++n) {
    c1_seq.push_back(C1Point{RayAddress(0, std::vector<Label>(n, 0), {1})});
    c2_seq.push_back(C2Point{RayAddress(1, std::vector<Label>(n + 1, 0), {1, 1, 0})});
  }
  run("C1 is closed under ray limits", c1_seq, C1Point{xi1}, std::nullopt);
  run("C2 is closed under ray limits", c2_seq, C2Point{RayAddress(1, {}, {0})}, std::nullopt);
}

// ---------------------------------------------------------------- walk-drift

void walk_drift(SuiteResult& s, const SuiteOptions& o) {
  const RayAddress probe_ray(0, {}, {0});
  auto config = [&](Rational p, std::uint64_t steps, std::uint64_t trajectories) {
    WalkConfig c;
    c.spec = dl(3, 3);
    c.p_up = p;
    c.steps = steps;
    c.trajectories = trajectories;
    c.seed = o.seed;
    c.record_stride = 0;
    c.probes = {{1, probe_ray}, {2, probe_ray}, {1, RayAddress(1, {}, {0, 1})}, {2, RayAddress(1, {}, {0, 1})},
                {1, RayAddress::gamma()}, {2, RayAddress::gamma()}};
    return c;
  };
  const std::uint64_t steps = 100000;
  const std::uint64_t trajectories = 100;

  auto structural = [](const SimulationResult& r) {
    return std::all_of(r.trajectories.begin(), r.trajectories.end(), [](const TrajectoryStats& t) {
      return t.unit_height_steps && t.max_dist_jump <= 1;
    });
  };

  {
    const auto result = simulate(config({1, 1}, steps, trajectories));
    const auto kl = kl_report(result);
    bool exact = true;
    for (const auto& t : result.trajectories) {
      exact = exact && t.last.dist == static_cast<std::int64_t>(steps) &&
              t.last.height == static_cast<std::int64_t>(steps) && t.last.probes[1] == static_cast<std::int64_t>(steps);
    }
    add(s, "p_up = 1: speed and height slope exactly 1",
        kl.speed.mean == 1.0 && kl.height_slope.mean == 1.0 && exact && structural(result) && kl.ok(),
        {{"kl", to_json(kl)}, {"exact_endpoints", exact}});
  }
  {
    const auto result = simulate(config({0, 1}, 2000, 5));
    bool exact = true;
    for (const auto& t : result.trajectories) {
      exact = exact && t.last.dist == 2000 && t.last.height == -2000 && t.last.probes[0] == 2000;
    }
    add(s, "p_up = 0: distance n, height -n, tree-1 probe n", exact && structural(result));
  }
  for (Rational p : {Rational{4, 5}, Rational{1, 5}}) {
    const auto result = simulate(config(p, steps, trajectories));
    const auto kl = kl_report(result);
    const int expected_sign = p.num * 2 > p.den ? 1 : -1;
    const bool opposite_probe_present =
        std::count_if(kl.probes.begin(), kl.probes.end(), [](const ProbeCheck& c) { return c.opposite; }) >= 2;
    add(s, "p_up = " + to_string(p) + ": drift identities within 0.05",
        !kl.zero_speed && kl.speed.mean > 0 && kl.escape_sign == expected_sign && kl.height_ok && kl.lln_ok &&
            kl.probes_ok && opposite_probe_present && structural(result),
        {{"seed", o.seed}, {"kl", to_json(kl)}});
  }
  {
    const auto result = simulate(config({1, 2}, steps, trajectories));
    const auto kl = kl_report(result);
    add(s, "p_up = 1/2: zero-speed regime flagged", kl.zero_speed && std::abs(kl.speed.mean) <= 0.05 && structural(result),
        {{"seed", o.seed}, {"kl", to_json(kl)}});
  }
  {
    auto c = config({4, 5}, 1000, 3);
    c.record_stride = 1;
    const auto a = simulate(c);
    const auto b = simulate(c);
    add(s, "identical configs give identical trajectories", a.trajectories == b.trajectories);
  }
}

// ---------------------------------------------------------------- pointwise-limits

void pointwise_limits(SuiteResult& s, const SuiteOptions& o) {
  const std::int64_t r = o.radius.value_or(4);
  const auto spec = dl(3, 3);
  const DLVertex v{parse_vertex("0;0"), parse_vertex("1;")};

  auto run = [&](const std::string& name, const SequenceFamily& f, std::optional<std::pair<std::uint64_t, std::uint64_t>> window,
                 std::int64_t radius, bool expect_stable) {
    const auto cls = classify_hm(spec, f, {radius});
    const std::uint64_t n0 = window ? window->first : cls.stabilization_index.value_or(0);
    const std::uint64_t n1 = window ? window->second : n0 + 50;
    const auto rep = empirical_pointwise_check(spec, f, n0, n1, radius);
    Json detail = to_json(rep);
    detail["classified"] = to_json(cls);
    const bool ok = expect_stable ? rep.stabilized() : (!rep.constant && !rep.violations.empty());
    add(s, name, ok, detail);
  };

  run("eventually constant", {EventuallyConstantFamily{{base_vertex(), base_vertex()}, v}}, std::nullopt, r, true);
  run("horocyclic level 1, window (20, 40), radius 3", {HorocyclicFamily{1, 0, 1}},
      std::make_pair<std::uint64_t, std::uint64_t>(20, 40), 3, true);
  run("horocyclic level -2", {HorocyclicFamily{-2, 3, 2}}, std::nullopt, r, true);
  run("radial along a tree-1 ray", {RadialRayFamily{1, RayAddress(0, {}, {1, 0}), 1, 1, 1}}, std::nullopt, r, true);
  run("radial along a tree-2 ray", {RadialRayFamily{2, RayAddress(0, {1}, {0}), 0, 2, 1}}, std::nullopt, r, true);
  run("fixed second coordinate", {FixedSecondFamily{parse_vertex("1;"), 0, 1}}, std::nullopt, r, true);
  run("fixed first coordinate", {FixedFirstFamily{parse_vertex("0;1.0"), 0, 1}}, std::nullopt, r, true);
  CustomFamily osc;
  osc.name = "oscillating";
  osc.interleave = {SequenceFamily{HorocyclicFamily{0, 0, 1}}, SequenceFamily{HorocyclicFamily{1, 0, 1}}};
  run("alternating horocyclic levels 0 and 1 report a violation", {osc}, std::nullopt, r, false);

  // For eta = +inf the limit b_xi(y1) + h2(y2) + h1(y1) reduces to b_xi(y1).
  std::size_t failures = 0;
  for (const auto& ray : {RayAddress::gamma(), RayAddress(0, {}, {0}), RayAddress(2, {0, 1}, {1})}) {
    for (const auto& y : dl_ball(spec, r)) {
      const auto proof_form = busemann_ray(ray, y.x1) + height(y.x2) + height(y.x1);
      if (proof_form != eval(C1Point{ray}, y)) ++failures;
      const auto proof_form2 = busemann_ray(ray, y.x2) + height(y.x1) + height(y.x2);
      if (proof_form2 != eval(C2Point{ray}, y)) ++failures;
    }
  }
  add(s, "unbounded-height limits reduce to the tree Busemann function", failures == 0, {{"failures", failures}});
}

struct Entry {
  const char* name;
  void (*run)(SuiteResult&, const SuiteOptions&);
};

const std::vector<Entry>& entries() {
  static const std::vector<Entry> list = {
      {"metric-oracle", metric_oracle},      {"lemma41", lemma41},
      {"tree-lemmas", tree_lemmas},          {"boundary-functions", boundary_functions},
      {"isomorphism", isomorphism},          {"fset", fset},
      {"closure", closure},                  {"walk-drift", walk_drift},
      {"pointwise-limits", pointwise_limits},
  };
  return list;
}

SequenceFamily random_simple_family(const DLSpec& spec, Rand& rand, int kind) {
  switch (kind) {
    case 0: {
      const auto ball = dl_ball(spec, 3);
      EventuallyConstantFamily f;
      const auto len = rand.between(0, 5);
      for (std::int64_t i = 0; i < len; ++i) f.prefix.push_back(rand.pick(ball));
      f.vertex = rand.pick(ball);
      return {f};
    }
    case 1: {
      RadialRayFamily f;
      f.side = static_cast<int>(rand.between(1, 2));
      f.ray = random_ray(f.side == 1 ? spec.first : spec.second, rand, true);
      f.offset = rand.between(0, 3);
      f.start_height = rand.between(1, 3);
      f.stride = rand.between(1, 2);
      return {f};
    }
    case 2:
      return {HorocyclicFamily{rand.between(-3, 3), static_cast<std::uint64_t>(rand.between(0, 20)),
                               static_cast<std::uint64_t>(rand.between(1, 3))}};
    case 3:
      return {FixedSecondFamily{rand.pick(enumerate_ball(spec.second, 3)), static_cast<std::uint64_t>(rand.between(0, 20)),
                                static_cast<std::uint64_t>(rand.between(1, 3))}};
    default:
      return {FixedFirstFamily{rand.pick(enumerate_ball(spec.first, 3)), static_cast<std::uint64_t>(rand.between(0, 20)),
                               static_cast<std::uint64_t>(rand.between(1, 3))}};
  }
}

// Same limit, different start.
SequenceFamily shifted(const SequenceFamily& f, Rand& rand) {
  SequenceFamily g = f;
  std::visit(
      [&](auto& x) {
        using F = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<F, EventuallyConstantFamily>) {
          x.prefix.push_back(x.vertex);
        } else if constexpr (std::is_same_v<F, RadialRayFamily>) {
          x.start_height += rand.between(0, 4);
        } else if constexpr (std::is_same_v<F, CustomFamily>) {
        } else {
          x.start += static_cast<std::uint64_t>(rand.between(0, 10));
        }
      },
      g.kind);
  return g;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& e : entries()) out.emplace_back(e.name);
    return out;
  }();
  return names;
}

SuiteResult run_suite(const std::string& name, const SuiteOptions& options) {
  for (const auto& e : entries()) {
    if (name != e.name) continue;
    SuiteResult s;
    s.suite = name;
    const auto t0 = Clock::now();
    try {
      e.run(s, options);
    } catch (const std::exception& ex) {
      add(s, "suite completed without error", false, {{"error", ex.what()}});
    }
    s.seconds = seconds_since(t0);
    s.passed = !s.checks.empty() &&
               std::all_of(s.checks.begin(), s.checks.end(), [](const CheckResult& c) { return c.passed; });
    return s;
  }
  throw std::invalid_argument("unknown suite '" + name + "'");
}

Json to_json(const SuiteResult& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  return {{"suite", r.suite}, {"passed", r.passed}, {"seconds", r.seconds}, {"checks", checks}};
}

std::vector<BoundaryFunction> boundary_catalog() {
  std::vector<BoundaryFunction> out;
  const std::vector<std::string> rays = {"gamma", "0;(0)", "0;0(1)", "0;1(0)", "0;(1)", "1;(0)", "1;0(1)", "2;(0)"};
  for (const auto& r : rays) out.push_back(C1Point{parse_ray(r)});
  for (const auto& r : rays) out.push_back(C2Point{parse_ray(r)});
  auto tree_ball = enumerate_ball(TreeSpec::regular(3), 2);
  std::erase_if(tree_ball, [](const VertexAddress& v) { return v.on_ray() && v.branch >= 2; });
  tree_ball.push_back(parse_vertex("1;0.0"));
  for (const auto& v : tree_ball) out.push_back(T1Point{v});
  for (const auto& v : tree_ball) out.push_back(T2Point{v});
  for (std::int64_t k = -2; k <= 2; ++k) out.push_back(ZPoint{k});
  return out;
}

std::vector<FamilyCase> random_family_cases(std::uint64_t seed, std::size_t count, std::size_t* redrawn) {
  std::vector<FamilyCase> out;
  std::size_t rejected = 0;
  const DLSpec specs[] = {dl(3, 3), dl(3, 4)};
  const char* labels[] = {"DL(3,3)", "DL(3,4)"};
  for (std::size_t i = 0; i < count; ++i) {
    const DLSpec& spec = specs[i % 2];
    const int kind = static_cast<int>((i / 2) % 6);
    Rand rand(seed, 1000 + i);
    SequenceFamily family;
    if (kind < 5) {
      family = random_simple_family(spec, rand, kind);
    } else {
      while (true) {
        CustomFamily custom;
        custom.name = "interleave";
        const auto parts = rand.between(2, 3);
        if (rand.between(0, 2) == 0) {
          const auto base = random_simple_family(spec, rand, static_cast<int>(rand.between(0, 4)));
          custom.interleave.push_back(base);
          for (std::int64_t p = 1; p < parts; ++p) custom.interleave.push_back(shifted(base, rand));
        } else {
          for (std::int64_t p = 0; p < parts; ++p) {
            custom.interleave.push_back(random_simple_family(spec, rand, static_cast<int>(rand.between(0, 4))));
          }
        }
        // Distinct part limits must be told apart by the radius-4 ball.
        const auto ball = dl_ball(spec, 4);
        std::set<std::string> limits;
        std::set<std::vector<std::int32_t>> tables;
        for (const auto& part : custom.interleave) {
          const auto lim = busemann_limit(spec, part);
          limits.insert(to_string(*lim));
          tables.insert(value_table(*lim, ball));
        }
        if (limits.size() > 1 && tables.size() == 1) {
          ++rejected;
          continue;
        }
        family = {custom};
        break;
      }
    }
    out.push_back({std::string(labels[i % 2]) + " #" + std::to_string(i) + " " + kind_name(family), spec,
                   std::move(family)});
  }
  if (redrawn) *redrawn = rejected;
  return out;
}

}  // namespace horo
