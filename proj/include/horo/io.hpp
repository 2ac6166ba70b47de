#pragma once

// JSON forms of specs, families, reports and walk configurations. Keys keep
// insertion order so identical inputs give byte-identical output.

#include <string>

#include "json.hpp"

#include "horo/dl_boundary.hpp"
#include "horo/limits.hpp"
#include "horo/tree.hpp"
#include "horo/walk.hpp"

namespace horo {

using Json = nlohmann::ordered_json;

/// Parse text or a file; malformed JSON raises ParseError.
Json parse_json(const std::string& text);
Json read_json_file(const std::string& path);

// {"family": "regular", "degree": 3, "min_degree": 2}
// {"family": "line", "min_degree": 2}
// {"family": "ray_periodic", "ray_degrees": [...], "off_ray_degrees": [...], "min_degree": 2}
// {"family": "explicit_core", "radius": 4, "core_degree": 3, "overrides": {"0;0": 2},
//  "tail_degree": 2, "min_degree": 2}
// Callback families serialize as {"family": "callback", "name": ...} and do not parse back.
Json to_json(const TreeSpec& spec);
TreeSpec tree_spec_from_json(const Json& j);

/// {"tree1": ..., "tree2": ...}
Json to_json(const DLSpec& spec);
DLSpec dl_spec_from_json(const Json& j);

// {"kind": "eventually_constant", "prefix": ["x1|x2", ...], "vertex": "x1|x2"}
// {"kind": "radial_ray", "side": 1, "ray": "0;(0)", "offset": 0, "start_height": 1, "stride": 1}
// {"kind": "horocyclic", "level": 2, "start": 0, "stride": 1}
// {"kind": "fixed_second", "vertex": "1;", "start": 0, "stride": 1}
// {"kind": "fixed_first", "vertex": "0;0", "start": 0, "stride": 1}
// {"kind": "custom", "name": "...", "interleave": [family, ...]}
// Missing optional fields take the defaults above.
Json to_json(const SequenceFamily& family);
SequenceFamily family_from_json(const Json& j);

Json to_json(const ExtendedInt& e);
Json to_json(const ValidationReport& report);
Json to_json(const LimitReport& report);
Json to_json(const PointwiseReport& report);
Json to_json(const IsomorphismReport& report);
Json to_json(const LimitCheckReport& report);

// {"spec": ..., "p_up": "4/5", "steps": 100000, "seed": 1, "trajectories": 100,
//  "probes": [{"tree": 2, "ray": "0;(0)"}], "record_stride": 1, "max_total_steps": ...}
// p_up may also be a JSON number (read as its shortest decimal form) or a string "0.8".
Json to_json(const WalkConfig& config);
WalkConfig walk_config_from_json(const Json& j);

Json to_json(const Estimate& e);
Json to_json(const KLReport& report);
/// Config echo, RNG identifier, truncation flag, per-trajectory slopes and the
/// speed estimate (null when undefined).
Json walk_summary(const SimulationResult& result);

}  // namespace horo
