#include "horo/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "horo/error.hpp"

namespace horo {

namespace {

template <class T>
T field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ParseError(std::string("field '") + key + "' has the wrong type");
  }
}

template <class T>
T field_or(const Json& j, const char* key, T fallback) {
  if (!j.is_object() || !j.contains(key)) return fallback;
  return field<T>(j, key);
}

Json optional_json(const std::optional<BoundaryFunction>& f) {
  return f ? Json(to_string(*f)) : Json(nullptr);
}

Json optional_point(const std::optional<TreePoint>& p) { return p ? Json(to_string(*p)) : Json(nullptr); }

Json vertex_json(const DLVertex& v) { return to_string(v); }

}  // namespace

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_json(buf.str());
}

Json to_json(const TreeSpec& spec) {
  Json j;
  std::visit(
      [&](const auto& f) {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, RegularFamily>) {
          j["family"] = "regular";
          j["degree"] = f.degree;
        } else if constexpr (std::is_same_v<F, LineFamily>) {
          j["family"] = "line";
        } else if constexpr (std::is_same_v<F, RayPeriodicFamily>) {
          j["family"] = "ray_periodic";
          j["ray_degrees"] = f.ray_degrees;
          j["off_ray_degrees"] = f.off_ray_degrees;
        } else if constexpr (std::is_same_v<F, ExplicitCoreFamily>) {
          j["family"] = "explicit_core";
          j["radius"] = f.radius;
          j["core_degree"] = f.core_degree;
          Json overrides = Json::object();
          for (const auto& [v, d] : f.overrides) overrides[to_string(v)] = d;
          j["overrides"] = overrides;
          j["tail_degree"] = f.tail_degree;
        } else {
          j["family"] = "callback";
          j["name"] = f.name;
        }
      },
      spec.family());
  j["min_degree"] = spec.min_degree();
  return j;
}

TreeSpec tree_spec_from_json(const Json& j) {
  const auto family = field<std::string>(j, "family");
  const int min_degree = field_or<int>(j, "min_degree", 2);
  if (family == "regular") return TreeSpec(RegularFamily{field<int>(j, "degree")}, min_degree);
  if (family == "line") return TreeSpec(LineFamily{}, min_degree);
  if (family == "ray_periodic") {
    return TreeSpec(RayPeriodicFamily{field<std::vector<int>>(j, "ray_degrees"),
                                      field<std::vector<int>>(j, "off_ray_degrees")},
                    min_degree);
  }
  if (family == "explicit_core") {
    ExplicitCoreFamily f;
    f.radius = field<int>(j, "radius");
    f.core_degree = field_or<int>(j, "core_degree", 3);
    f.tail_degree = field<int>(j, "tail_degree");
    if (j.contains("overrides")) {
      const auto& o = j.at("overrides");
      if (!o.is_object()) throw ParseError("'overrides' must map addresses to degrees");
      for (const auto& [key, value] : o.items()) {
        if (!value.is_number_integer()) throw ParseError("override degree must be an integer");
        f.overrides[parse_vertex(key)] = value.get<int>();
      }
    }
    return TreeSpec(std::move(f), min_degree);
  }
  if (family == "callback") throw ParseError("callback trees cannot be read from JSON");
  throw ParseError("unknown tree family '" + family + "'");
}

Json to_json(const DLSpec& spec) {
  Json j;
  j["tree1"] = to_json(spec.first);
  j["tree2"] = to_json(spec.second);
  return j;
}

DLSpec dl_spec_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("tree1") || !j.contains("tree2")) {
    throw ParseError("DL spec needs 'tree1' and 'tree2'");
  }
  return {tree_spec_from_json(j.at("tree1")), tree_spec_from_json(j.at("tree2"))};
}

Json to_json(const SequenceFamily& family) {
  Json j;
  j["kind"] = kind_name(family);
  std::visit(
      [&](const auto& f) {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, EventuallyConstantFamily>) {
          Json prefix = Json::array();
          for (const auto& v : f.prefix) prefix.push_back(to_string(v));
          j["prefix"] = prefix;
          j["vertex"] = to_string(f.vertex);
        } else if constexpr (std::is_same_v<F, RadialRayFamily>) {
          j["side"] = f.side;
          j["ray"] = to_string(f.ray);
          j["offset"] = f.offset;
          j["start_height"] = f.start_height;
          j["stride"] = f.stride;
        } else if constexpr (std::is_same_v<F, HorocyclicFamily>) {
          j["level"] = f.level;
          j["start"] = f.start;
          j["stride"] = f.stride;
        } else if constexpr (std::is_same_v<F, FixedSecondFamily>) {
          j["vertex"] = to_string(f.x2);
          j["start"] = f.start;
          j["stride"] = f.stride;
        } else if constexpr (std::is_same_v<F, FixedFirstFamily>) {
          j["vertex"] = to_string(f.x1);
          j["start"] = f.start;
          j["stride"] = f.stride;
        } else {
          j["name"] = f.name;
          if (f.interleave.empty()) {
            j["generator"] = "opaque";
          } else {
            Json parts = Json::array();
            for (const auto& p : f.interleave) parts.push_back(to_json(p));
            j["interleave"] = parts;
          }
        }
      },
      family.kind);
  return j;
}

SequenceFamily family_from_json(const Json& j) {
  const auto kind = field<std::string>(j, "kind");
  if (kind == "eventually_constant") {
    EventuallyConstantFamily f;
    for (const auto& s : field_or<std::vector<std::string>>(j, "prefix", {})) f.prefix.push_back(parse_dl_vertex(s));
    f.vertex = parse_dl_vertex(field<std::string>(j, "vertex"));
    return {f};
  }
  if (kind == "radial_ray") {
    RadialRayFamily f;
    f.side = field_or<int>(j, "side", 1);
    f.ray = parse_ray(field<std::string>(j, "ray"));
    f.offset = field_or<std::int64_t>(j, "offset", 0);
    f.start_height = field_or<std::int64_t>(j, "start_height", 1);
    f.stride = field_or<std::int64_t>(j, "stride", 1);
    return {f};
  }
  if (kind == "horocyclic") {
    return {HorocyclicFamily{field<std::int64_t>(j, "level"), field_or<std::uint64_t>(j, "start", 0),
                             field_or<std::uint64_t>(j, "stride", 1)}};
  }
  if (kind == "fixed_second") {
    return {FixedSecondFamily{parse_vertex(field<std::string>(j, "vertex")), field_or<std::uint64_t>(j, "start", 0),
                              field_or<std::uint64_t>(j, "stride", 1)}};
  }
  if (kind == "fixed_first") {
    return {FixedFirstFamily{parse_vertex(field<std::string>(j, "vertex")), field_or<std::uint64_t>(j, "start", 0),
                             field_or<std::uint64_t>(j, "stride", 1)}};
  }
  if (kind == "custom") {
    CustomFamily f;
    f.name = field_or<std::string>(j, "name", "custom");
    if (!j.contains("interleave") || !j.at("interleave").is_array() || j.at("interleave").empty()) {
      throw ParseError("custom family needs a non-empty 'interleave' list");
    }
    for (const auto& part : j.at("interleave")) f.interleave.push_back(family_from_json(part));
    return {f};
  }
  throw ParseError("unknown family kind '" + kind + "'");
}

Json to_json(const ExtendedInt& e) {
  if (e.is_finite()) return e.value;
  return to_string(e);
}

Json to_json(const ValidationReport& report) {
  Json j;
  j["ok"] = report.ok();
  j["exhaustive"] = report.exhaustive;
  Json violations = Json::array();
  for (const auto& v : report.violations) {
    violations.push_back({{"witness", to_string(v.witness)}, {"degree", v.degree}, {"reason", v.reason}});
  }
  j["violations"] = violations;
  return j;
}

Json to_json(const LimitReport& r) {
  Json j;
  j["verdict"] = to_string(r.verdict);
  j["components"] = {{"first", optional_point(r.components.first)},
                     {"second", optional_point(r.components.second)},
                     {"height", r.components.height ? to_json(*r.components.height) : Json(nullptr)}};
  j["hm_limit"] = optional_json(r.hm_limit);
  j["busemann_limit"] = optional_json(r.busemann_limit);
  j["radius"] = r.radius;
  j["stabilization_index"] = r.stabilization_index ? Json(*r.stabilization_index) : Json(nullptr);
  j["realizable"] = {
      {"per_component", r.realizable_per_component ? Json(*r.realizable_per_component) : Json(nullptr)},
      {"literal", r.realizable_literal ? Json(*r.realizable_literal) : Json(nullptr)}};
  j["heuristic_window"] = r.heuristic_window
                              ? Json::array({r.heuristic_window->first, r.heuristic_window->second})
                              : Json(nullptr);
  j["notes"] = r.notes;
  return j;
}

Json to_json(const PointwiseReport& r) {
  Json j;
  j["window"] = Json::array({r.n0, r.n1});
  j["radius"] = r.radius;
  j["constant"] = r.constant;
  j["limit"] = optional_json(r.limit);
  j["matches_limit"] = r.matches_limit;
  j["stabilized"] = r.stabilized();
  Json violations = Json::array();
  for (const auto& v : r.violations) {
    violations.push_back(
        {{"vertex", vertex_json(v.vertex)}, {"index", v.index}, {"value", v.value}, {"expected", v.expected}});
  }
  j["violations"] = violations;
  return j;
}

Json to_json(const IsomorphismReport& r) {
  Json j;
  j["agreed"] = r.agreed;
  j["disagreed"] = r.disagreed;
  j["undecided"] = r.undecided;
  Json entries = Json::array();
  for (const auto& e : r.entries) {
    entries.push_back({{"label", e.label},
                       {"symbolic", to_string(e.symbolic)},
                       {"limit", optional_json(e.symbolic_limit)},
                       {"empirical_constant", e.empirical_constant},
                       {"window", Json::array({e.n0, e.n1})},
                       {"agree", e.agree},
                       {"detail", e.detail}});
  }
  j["entries"] = entries;
  return j;
}

Json to_json(const LimitCheckReport& r) {
  Json j;
  j["stabilized"] = r.stabilized;
  j["stabilization_index"] = r.stabilization_index;
  j["vertices"] = r.entries.size();
  if (r.witness) {
    j["witness"] = {{"vertex", vertex_json(r.witness->vertex)},
                    {"index", r.witness->index},
                    {"value", r.witness->value},
                    {"expected", r.witness->expected}};
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

Json to_json(const WalkConfig& c) {
  Json j;
  j["spec"] = to_json(c.spec);
  j["p_up"] = to_string(c.p_up);
  j["steps"] = c.steps;
  j["seed"] = c.seed;
  j["trajectories"] = c.trajectories;
  Json probes = Json::array();
  for (const auto& p : c.probes) probes.push_back({{"tree", p.tree}, {"ray", to_string(p.ray)}});
  j["probes"] = probes;
  j["record_stride"] = c.record_stride;
  j["max_total_steps"] = c.max_total_steps;
  return j;
}

WalkConfig walk_config_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("walk config must be an object");
  WalkConfig c;
  if (j.contains("spec")) c.spec = dl_spec_from_json(j.at("spec"));
  if (j.contains("p_up")) {
    const auto& p = j.at("p_up");
    if (p.is_string()) {
      c.p_up = parse_rational(p.get<std::string>());
    } else if (p.is_number()) {
      c.p_up = rational_from_double(p.get<double>());
    } else {
      throw ParseError("'p_up' must be a number or a string");
    }
  }
  // Accept only non-negative integers for counts; a negative value is a usage error.
  auto count = [&](const char* key, std::uint64_t fallback) {
    if (!j.contains(key)) return fallback;
    const auto& v = j.at(key);
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_number_float()) {
      const double d = v.get<double>();
      if (d >= 0 && d < 1.8e19 && d == std::floor(d)) return static_cast<std::uint64_t>(d);
    }
    throw ParseError(std::string("'") + key + "' must be a non-negative integer");
  };
  c.steps = count("steps", c.steps);
  c.seed = count("seed", c.seed);
  c.trajectories = count("trajectories", c.trajectories);
  c.record_stride = count("record_stride", c.record_stride);
  c.max_total_steps = count("max_total_steps", c.max_total_steps);
  if (j.contains("probes")) {
    for (const auto& p : j.at("probes")) {
      if (p.is_string()) {
        c.probes.push_back({2, parse_ray(p.get<std::string>())});
      } else {
        c.probes.push_back({field_or<int>(p, "tree", 2), parse_ray(field<std::string>(p, "ray"))});
      }
    }
  }
  return c;
}

Json to_json(const Estimate& e) {
  return {{"mean", e.mean}, {"std_error", e.std_error}, {"samples", e.samples}};
}

Json to_json(const KLReport& r) {
  Json j;
  j["speed"] = to_json(r.speed);
  j["height_slope"] = to_json(r.height_slope);
  j["escape_sign"] = r.escape_sign;
  j["zero_speed"] = r.zero_speed;
  j["tolerance"] = r.tolerance;
  j["zero_threshold"] = r.zero_threshold;
  j["height_ok"] = r.height_ok;
  j["lln_function"] = r.lln_function;
  j["lln_slope"] = to_json(r.lln_slope);
  j["lln_ok"] = r.lln_ok;
  Json probes = Json::array();
  for (const auto& p : r.probes) {
    probes.push_back({{"index", p.index},
                      {"tree", p.probe.tree},
                      {"ray", to_string(p.probe.ray)},
                      {"slope", to_json(p.slope)},
                      {"opposite", p.opposite},
                      {"within", p.within}});
  }
  j["probes"] = probes;
  j["probes_ok"] = r.probes_ok;
  j["ok"] = r.ok();
  return j;
}

Json walk_summary(const SimulationResult& result) {
  Json j;
  j["rng"] = std::string(kRngIdentifier);
  j["config"] = to_json(result.config);
  j["truncated"] = result.truncated;
  Json trajectories = Json::array();
  for (const auto& t : result.trajectories) {
    trajectories.push_back({{"index", t.index},
                            {"steps", t.steps_done},
                            {"final", {{"dist", t.last.dist}, {"height", t.last.height}, {"probes", t.last.probes}}},
                            {"dist_slope", t.dist_slope},
                            {"height_slope", t.height_slope},
                            {"probe_slopes", t.probe_slopes},
                            {"max_dist_jump", t.max_dist_jump},
                            {"unit_height_steps", t.unit_height_steps}});
  }
  j["trajectories"] = trajectories;
  try {
    j["speed"] = to_json(estimate_speed(result));
    j["kl"] = to_json(kl_report(result));
  } catch (const Error& e) {
    j["speed"] = nullptr;
    j["kl"] = nullptr;
    j["note"] = e.what();
  }
  return j;
}

}  // namespace horo
