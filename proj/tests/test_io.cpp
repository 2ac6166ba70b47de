#include "doctest.h"

#include "horo/error.hpp"
#include "horo/io.hpp"

using namespace horo;

TEST_CASE("tree spec JSON round trip") {
  std::vector<TreeSpec> specs = {TreeSpec::regular(3), TreeSpec::regular(4, 3), TreeSpec::line(),
                                 TreeSpec(RayPeriodicFamily{{3, 2}, {2, 4}}),
                                 TreeSpec(ExplicitCoreFamily{3, 3, {{parse_vertex("0;0"), 4}}, 2})};
  for (const auto& s : specs) {
    const auto j = to_json(s);
    CHECK(tree_spec_from_json(j) == s);
    CHECK(to_json(tree_spec_from_json(parse_json(j.dump()))).dump() == j.dump());
  }
  CHECK(tree_spec_from_json(parse_json(R"J({"family":"regular","degree":3})J")) == TreeSpec::regular(3));
  CHECK_THROWS_AS(tree_spec_from_json(parse_json(R"J({"family":"bogus"})J")), ParseError);
  CHECK_THROWS_AS(tree_spec_from_json(parse_json(R"J({"family":"regular"})J")), ParseError);
  CHECK_THROWS_AS(parse_json("{"), ParseError);
  CHECK_THROWS_AS(read_json_file("/nonexistent/file.json"), ParseError);
}

TEST_CASE("DL spec and family JSON round trip") {
  const DLSpec spec{TreeSpec::regular(3), TreeSpec::line()};
  CHECK(to_json(dl_spec_from_json(to_json(spec))).dump() == to_json(spec).dump());

  CustomFamily custom;
  custom.name = "mix";
  custom.interleave = {SequenceFamily{HorocyclicFamily{1, 2, 3}},
                       SequenceFamily{RadialRayFamily{2, RayAddress(0, {1}, {0}), 1, 2, 2}}};
  std::vector<SequenceFamily> fams = {
      {EventuallyConstantFamily{{parse_dl_vertex("0;0|1;")}, base_vertex()}},
      {RadialRayFamily{1, RayAddress::gamma(), 0, 1, 1}},
      {HorocyclicFamily{-2, 4, 1}},
      {FixedSecondFamily{parse_vertex("1;0"), 0, 2}},
      {FixedFirstFamily{parse_vertex("0;1"), 3, 1}},
      {custom},
  };
  for (const auto& f : fams) {
    const auto j = to_json(f);
    CHECK(to_json(family_from_json(j)).dump() == j.dump());
  }
  const auto h = family_from_json(parse_json(R"J({"kind":"horocyclic","level":2})J"));
  CHECK(std::get<HorocyclicFamily>(h.kind).level == 2);
  CHECK(std::get<HorocyclicFamily>(h.kind).stride == 1);
  CHECK_THROWS_AS(family_from_json(parse_json(R"J({"kind":"spiral"})J")), ParseError);
}

TEST_CASE("walk config JSON") {
  const auto c = walk_config_from_json(parse_json(
      R"J({"p_up":"4/5","steps":100,"seed":3,"trajectories":2,"probes":["0;(0)",{"tree":1,"ray":"gamma"}]})J"));
  CHECK(c.p_up == Rational{4, 5});
  CHECK(c.steps == 100);
  CHECK(c.probes.size() == 2);
  CHECK(c.probes[0].tree == 2);
  CHECK(c.probes[1].ray.is_gamma());
  CHECK(walk_config_from_json(parse_json(R"J({"p_up":0.8})J")).p_up == Rational{4, 5});
  CHECK(walk_config_from_json(to_json(c)).probes == c.probes);
  CHECK_THROWS_AS(walk_config_from_json(parse_json(R"J({"steps":-1})J")), ParseError);
  CHECK_THROWS_AS(walk_config_from_json(parse_json(R"J({"steps":1.5})J")), ParseError);
}

TEST_CASE("walk summary is deterministic") {
  WalkConfig c;
  c.p_up = {4, 5};
  c.steps = 1000;
  c.trajectories = 2;
  c.seed = 5;
  const auto a = walk_summary(simulate(c)).dump();
  const auto b = walk_summary(simulate(c)).dump();
  CHECK(a == b);
  const auto j = parse_json(a);
  CHECK(j.at("rng") == kRngIdentifier);
  CHECK(j.at("truncated") == false);
}
