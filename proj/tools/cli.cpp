#include "cli.hpp"

#include <fstream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "horo/error.hpp"
#include "horo/io.hpp"
#include "horo/suites.hpp"

namespace horo::cli {

namespace {

struct Usage : Error {
  using Error::Error;
};

struct Output {
  Json payload;
  int code = 0;
};

// Inline JSON if it starts with '{', otherwise a file path.
Json load(const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t\n");
  if (first != std::string::npos && arg[first] == '{') return parse_json(arg);
  return read_json_file(arg);
}

DLSpec load_spec(const std::string& arg) {
  if (arg.empty()) return {TreeSpec::regular(3), TreeSpec::regular(3)};
  return dl_spec_from_json(load(arg));
}

DLVertex vertex_arg(const DLSpec& spec, const std::string& text) {
  const auto v = parse_dl_vertex(text);
  if (!is_valid(spec, v)) throw AddressError("vertex '" + text + "' is not in the product");
  return v;
}

void render_text(std::ostream& out, const Json& j, const std::string& path) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) render_text(out, v, path.empty() ? k : path + "." + k);
  } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
    for (std::size_t i = 0; i < j.size(); ++i) render_text(out, j[i], path + "[" + std::to_string(i) + "]");
  } else {
    out << path << " = " << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
  }
}

Output cmd_validate(const std::string& file) {
  const Json j = load(file);
  Json trees = Json::array();
  bool ok = true;
  auto one = [&](const std::string& name, const TreeSpec& spec) {
    const auto report = validate_spec(spec);
    ok = ok && report.ok();
    Json t = to_json(report);
    t["tree"] = name;
    trees.push_back(t);
  };
  std::string kind;
  if (j.is_object() && j.contains("tree1")) {
    const auto spec = dl_spec_from_json(j);
    kind = "dl";
    one("tree1", spec.first);
    one("tree2", spec.second);
  } else {
    kind = "tree";
    one("tree", tree_spec_from_json(j));
  }
  return {{{"kind", kind}, {"ok", ok}, {"trees", trees}}, ok ? 0 : 1};
}

Output cmd_ball(const std::string& spec_arg, std::int64_t radius) {
  if (radius < 0) throw Usage("--radius must be non-negative");
  const auto spec = load_spec(spec_arg);
  const auto ball = dl_ball(spec, radius);
  Json vertices = Json::array();
  for (const auto& v : ball) vertices.push_back(to_string(v));
  return {{{"spec", to_json(spec)}, {"radius", radius}, {"size", ball.size()}, {"vertices", vertices}}, 0};
}

Output cmd_dist(const std::string& spec_arg, const std::string& a, const std::string& b, bool oracle) {
  const auto spec = load_spec(spec_arg);
  const auto v = vertex_arg(spec, a);
  const auto w = vertex_arg(spec, b);
  const auto d = dl_dist(v, w);
  Json j = {{"v", to_string(v)}, {"w", to_string(w)}, {"dist", d}};
  int code = 0;
  if (oracle) {
    const auto bfs = dl_dist_bfs(spec, v, w, d + 2);
    const bool agree = bfs && *bfs == d;
    j["oracle"] = {{"bfs", bfs ? Json(*bfs) : Json(nullptr)}, {"agree", agree}};
    if (!agree) code = 1;
  }
  return {j, code};
}

Output cmd_busemann(const std::string& spec_arg, const std::string& f_text, const std::string& y_text) {
  const auto spec = load_spec(spec_arg);
  const auto f = parse_boundary_function(f_text);
  if (!is_valid(spec, f)) throw AddressError("'" + f_text + "' does not name a function on this product");
  const auto y = vertex_arg(spec, y_text);
  return {{{"function", to_string(f)}, {"vertex", to_string(y)}, {"value", eval(f, y)}}, 0};
}

Output cmd_classify(const std::string& spec_arg, const std::string& file, std::int64_t radius, std::uint64_t window) {
  const Json j = load(file);
  DLSpec spec = load_spec(spec_arg);
  Json fam_json = j;
  if (j.is_object() && j.contains("family")) {
    fam_json = j.at("family");
    if (j.contains("spec") && spec_arg.empty()) spec = dl_spec_from_json(j.at("spec"));
  }
  const auto family = family_from_json(fam_json);
  const auto report = classify_hm(spec, family, {radius});
  const auto iso = isomorphism_check({{kind_name(family), spec, family}}, radius, window);
  const auto& entry = iso.entries.front();
  Json out = {{"spec", to_json(spec)}, {"family", to_json(family)}, {"report", to_json(report)}};
  out["empirical"] = {{"window", Json::array({entry.n0, entry.n1})},
                      {"constant", entry.empirical_constant},
                      {"agree", entry.agree},
                      {"detail", entry.detail}};
  if (entry.n1 > entry.n0 || entry.n0 > 0) {
    out["empirical"]["check"] = to_json(empirical_pointwise_check(spec, family, entry.n0, entry.n1, radius));
  }
  return {out, iso.disagreed > 0 ? 1 : 0};
}

Output cmd_verify(const std::string& suite, std::optional<std::int64_t> radius, std::uint64_t seed,
                  const std::string& families) {
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), suite) == names.end()) throw Usage("unknown suite '" + suite + "'");
  if (!families.empty()) {
    if (suite != "isomorphism") throw Usage("--families only applies to the isomorphism suite");
    const Json list = load(families);
    if (!list.is_array()) throw ParseError("family list must be a JSON array");
    std::vector<FamilyCase> cases;
    for (const auto& item : list) {
      const auto spec = item.contains("spec") ? dl_spec_from_json(item.at("spec"))
                                              : DLSpec{TreeSpec::regular(3), TreeSpec::regular(3)};
      const auto fam = family_from_json(item.contains("family") ? item.at("family") : item);
      cases.push_back({item.value("label", kind_name(fam)), spec, fam});
    }
    const auto report = isomorphism_check(cases, radius.value_or(4), 50);
    const bool ok = report.disagreed == 0;
    return {{{"suite", suite}, {"passed", ok}, {"families", families}, {"report", to_json(report)}}, ok ? 0 : 1};
  }
  SuiteOptions options;
  options.radius = radius;
  options.seed = seed;
  const auto result = run_suite(suite, options);
  return {to_json(result), result.passed ? 0 : 1};
}

Output cmd_walk(const std::string& file, const std::string& csv, std::optional<std::uint64_t> seed) {
  auto config = walk_config_from_json(load(file));
  if (seed) config.seed = *seed;
  if (config.trajectories == 0) throw Usage("trajectories must be positive");
  const auto result = simulate(config);
  Json summary = walk_summary(result);
  if (!csv.empty()) {
    std::ofstream f(csv);
    if (!f) throw Usage("cannot write '" + csv + "'");
    if (!result.trajectories.empty()) write_csv(f, result, result.trajectories.front());
    summary["csv"] = csv;
  }
  return {summary, result.truncated ? 1 : 0};
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Trees with a distinguished end, their horospheric products and boundaries"};
  app.require_subcommand(1);
  bool text = false;
  bool json = false;
  std::string spec_arg;
  auto fmt = app.add_flag("--text", text, "Human-readable output");
  app.add_flag("--json", json, "JSON output (default)")->excludes(fmt);

  std::function<Output()> action;

  std::string file;
  auto* validate = app.add_subcommand("validate", "Check a tree or product spec");
  validate->add_option("file", file, "Spec JSON file")->required();
  validate->callback([&] { action = [&] { return cmd_validate(file); }; });

  std::int64_t radius = 2;
  auto* ball = app.add_subcommand("ball", "List the ball around the base point");
  ball->add_option("--spec", spec_arg, "Product spec (file or inline JSON)");
  ball->add_option("--radius", radius, "Ball radius");
  ball->callback([&] { action = [&] { return cmd_ball(spec_arg, radius); }; });

  std::string a, b;
  bool oracle = false;
  auto* dist = app.add_subcommand("dist", "Distance between two vertices");
  dist->add_option("v", a, "x1|x2")->required();
  dist->add_option("w", b, "y1|y2")->required();
  dist->add_option("--spec", spec_arg, "Product spec");
  dist->add_flag("--oracle", oracle, "Also compute the BFS distance");
  dist->callback([&] { action = [&] { return cmd_dist(spec_arg, a, b, oracle); }; });

  auto* busemann = app.add_subcommand("busemann", "Evaluate a boundary function");
  busemann->add_option("function", a, "e.g. Z:2, C1:0;(0), T1:1;0, I:0;0|1;")->required();
  busemann->add_option("vertex", b, "y1|y2")->required();
  busemann->add_option("--spec", spec_arg, "Product spec");
  busemann->callback([&] { action = [&] { return cmd_busemann(spec_arg, a, b); }; });

  std::int64_t classify_radius = 4;
  std::uint64_t window = 50;
  auto* classify = app.add_subcommand("classify", "Classify a sequence family");
  classify->add_option("family", file, "Family JSON file")->required();
  classify->add_option("--spec", spec_arg, "Product spec (overrides the file)");
  classify->add_option("--radius", classify_radius, "Ball radius for the empirical check");
  classify->add_option("--window", window, "Empirical window length");
  classify->callback([&] { action = [&] { return cmd_classify(spec_arg, file, classify_radius, window); }; });

  std::string suite, families;
  std::optional<std::int64_t> verify_radius;
  std::uint64_t seed = SuiteOptions{}.seed;
  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("suite", suite, "Suite name")->required();
  verify->add_option("--radius", verify_radius, "Override the suite radius");
  verify->add_option("--seed", seed, "Random seed");
  verify->add_option("--families", families, "isomorphism: JSON list of {label, spec, family}");
  verify->callback([&] { action = [&] { return cmd_verify(suite, verify_radius, seed, families); }; });

  std::string csv;
  std::optional<std::uint64_t> walk_seed;
  auto* walk = app.add_subcommand("walk", "Simulate the random walk");
  walk->add_option("config", file, "Walk config JSON file")->required();
  walk->add_option("--csv", csv, "Write trajectory 0 as CSV");
  walk->add_option("--seed", walk_seed, "Override the config seed");
  walk->callback([&] { action = [&] { return cmd_walk(file, csv, walk_seed); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return 2;
  }

  try {
    const Output o = action();
    if (text) {
      render_text(out, o.payload, "");
    } else {
      out << o.payload.dump(2) << '\n';
    }
    return o.code;
  } catch (const Error& e) {
    err << Json{{"error", e.what()}}.dump() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    err << Json{{"error", e.what()}}.dump() << '\n';
    return 2;
  }
}

}  // namespace horo::cli
