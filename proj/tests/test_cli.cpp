#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"

#include "cli.hpp"
#include "horo/io.hpp"

using namespace horo;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
  Json json() const { return parse_json(out); }
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "horo");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string write(const std::string& name, const std::string& text) {
  const auto dir = std::filesystem::temp_directory_path() / "horo_cli_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / name;
  std::ofstream(path) << text;
  return path.string();
}

}  // namespace

TEST_CASE("validate") {
  const auto pair = write("pair.json", R"J({"tree1":{"family":"regular","degree":3},"tree2":{"family":"regular","degree":3}})J");
  CHECK(run({"validate", pair}).code == 0);
  const auto line = write("line3.json", R"J({"family":"line","min_degree":3})J");
  const auto r = run({"validate", line});
  CHECK(r.code == 1);
  CHECK(r.json()["trees"][0]["violations"][0]["witness"] == "0;");
  CHECK(run({"validate", "/nonexistent/spec.json"}).code == 2);
  CHECK(run({"validate", write("bad.json", "{nope")}).code == 2);
}

TEST_CASE("dist") {
  auto r = run({"dist", "base", "base"});
  CHECK(r.code == 0);
  CHECK(r.json()["dist"] == 0);
  r = run({"dist", "base", "0;0|1;", "--oracle"});
  CHECK(r.code == 0);
  CHECK(r.json()["dist"] == 1);
  CHECK(r.json()["oracle"]["agree"] == true);
  r = run({"dist", "0;0|1;", "0;1|1;", "--oracle"});
  CHECK(r.json()["dist"] == 2);
  CHECK(r.json()["oracle"]["bfs"] == 2);
  CHECK(run({"dist", "0;0", "base"}).code == 2);
  CHECK(run({"dist", "1;1|0;", "base"}).code == 2);
  const auto mixed = R"J({"tree1":{"family":"regular","degree":3},"tree2":{"family":"line"}})J";
  CHECK(run({"dist", "--spec", mixed, "base", "2;|0;0.0", "--oracle"}).json()["dist"] == 2);
}

TEST_CASE("ball and busemann") {
  CHECK(run({"ball", "--radius", "2"}).json()["size"] == 15);
  auto r = run({"busemann", "Z:1", "0;0|1;"});
  CHECK(r.code == 0);
  CHECK(r.json()["value"] == 1);
  CHECK(run({"busemann", "T1:1;1", "base"}).code == 2);
  CHECK(run({"--text", "busemann", "Z:1", "0;0|1;"}).out.find("value = 1") != std::string::npos);
}

TEST_CASE("classify") {
  auto r = run({"classify", write("h2.json", R"J({"kind":"horocyclic","level":2})J")});
  CHECK(r.code == 0);
  auto j = r.json();
  CHECK(j["report"]["hm_limit"] == "Z:2");
  CHECK(j["report"]["busemann_limit"] == "Z:2");
  CHECK(j["empirical"]["agree"] == true);

  r = run({"classify", write("radial.json", R"J({"kind":"radial_ray","side":1,"ray":"0;(0)"})J")});
  CHECK(r.json()["report"]["hm_limit"] == "C1:0;(0)");

  const auto osc = write("osc.json", R"J({"kind":"custom","name":"osc","interleave":[{"kind":"horocyclic","level":0},{"kind":"horocyclic","level":1}]})J");
  r = run({"classify", osc});
  CHECK(r.code == 0);
  CHECK(r.json()["report"]["verdict"] == "not_convergent");
  CHECK(r.json()["empirical"]["constant"] == false);

  const auto wrapped = write("wrapped.json",
                             R"J({"spec":{"tree1":{"family":"regular","degree":3},"tree2":{"family":"line"}},"family":{"kind":"horocyclic","level":0}})J");
  CHECK(run({"classify", wrapped}).code == 2);
}

TEST_CASE("verify") {
  CHECK(run({"verify", "no-such-suite"}).code == 2);
  auto r = run({"verify", "lemma41", "--radius", "3"});
  CHECK(r.code == 0);
  CHECK(r.json()["passed"] == true);
  const auto list = write("adversarial.json", R"J([
    {"label":"osc","family":{"kind":"custom","name":"osc","interleave":[{"kind":"horocyclic","level":0},{"kind":"horocyclic","level":1}]}},
    {"label":"flip","family":{"kind":"custom","name":"flip","interleave":[{"kind":"radial_ray","side":1,"ray":"gamma"},{"kind":"radial_ray","side":2,"ray":"gamma"}]}},
    {"label":"steady","family":{"kind":"horocyclic","level":-1}}])J");
  r = run({"verify", "isomorphism", "--families", list});
  CHECK(r.code == 0);
  const auto entries = r.json()["report"]["entries"];
  CHECK(entries[0]["symbolic"] == "not_convergent");
  CHECK(entries[1]["symbolic"] == "not_convergent");
  CHECK(entries[2]["symbolic"] == "converges");
}

TEST_CASE("walk") {
  const auto one = write("one.json", R"J({"p_up":"1","steps":100,"seed":1,"trajectories":2})J");
  const auto csv = (std::filesystem::temp_directory_path() / "horo_cli_test" / "one.csv").string();
  auto r = run({"walk", one, "--csv", csv});
  CHECK(r.code == 0);
  CHECK(r.json()["speed"]["mean"] == 1.0);
  std::ifstream in(csv);
  std::string header;
  std::getline(in, header);
  CHECK(header == "n,dist,height");
  CHECK(run({"walk", one}).out == run({"walk", one}).out);
  CHECK(run({"walk", write("none.json", R"J({"trajectories":0})J")}).code == 2);
  const auto capped = write("capped.json", R"J({"p_up":"1/2","steps":100,"trajectories":3,"max_total_steps":150})J");
  r = run({"walk", capped});
  CHECK(r.code == 1);
  CHECK(r.json()["truncated"] == true);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"ball", "--radius", "x"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}
