#pragma once

// Nearest-neighbor walks on T1 (up-down) T2: with probability p_up a uniform
// up-neighbor, otherwise a uniform down-neighbor.

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "horo/horoproduct.hpp"
#include "horo/tree_boundary.hpp"

namespace horo {

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Rational&, const Rational&) = default;
};

/// "p/q", an integer, or a finite decimal such as "0.8"; reduced to lowest terms.
Rational parse_rational(std::string_view text);
/// Exact value of a double's shortest decimal representation.
Rational rational_from_double(double x);
std::string to_string(const Rational& r);

inline constexpr std::string_view kRngIdentifier = "mt19937_64+splitmix64-seed+rejection-bounded";

/// mt19937_64 seeded with splitmix64(seed + index * 0x9e3779b97f4a7c15).
class WalkRng {
 public:
  WalkRng(std::uint64_t seed, std::uint64_t index);
  /// Uniform on [0, n) by rejection; n >= 1. Always consumes at least one draw.
  std::uint64_t bounded(std::uint64_t n);

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

/// b_ray evaluated on the given tree coordinate.
struct Probe {
  int tree = 2;
  RayAddress ray;

  friend bool operator==(const Probe&, const Probe&) = default;
};

struct WalkConfig {
  DLSpec spec{TreeSpec::regular(3), TreeSpec::regular(3)};
  Rational p_up{1, 2};
  std::uint64_t steps = 1000;
  std::uint64_t seed = 0;
  std::uint64_t trajectories = 1;
  std::vector<Probe> probes;
  /// Keep a record every record_stride steps (and the last step); 0 keeps none.
  std::uint64_t record_stride = 1;
  /// Total step budget over all trajectories.
  std::uint64_t max_total_steps = 2'000'000'000;
};

/// Throws SpecError on p_up outside [0, 1], trajectories == 0 or invalid probes.
void validate(const WalkConfig& config);

/// One step from v, drawing the move class then the neighbor from rng.
DLVertex step(const DLSpec& spec, const DLVertex& v, const Rational& p_up, WalkRng& rng);

struct WalkRecord {
  std::uint64_t n = 0;
  std::int64_t dist = 0;
  std::int64_t height = 0;
  std::vector<std::int64_t> probes;

  friend bool operator==(const WalkRecord&, const WalkRecord&) = default;
};

struct TrajectoryStats {
  std::uint64_t index = 0;
  std::uint64_t steps_done = 0;
  std::vector<WalkRecord> records;
  WalkRecord last;
  /// Least-squares slopes over n in [steps / 2, steps].
  double dist_slope = 0;
  double height_slope = 0;
  std::vector<double> probe_slopes;
  /// Largest |dist(n+1) - dist(n)| and whether every height step was +-1.
  std::int64_t max_dist_jump = 0;
  bool unit_height_steps = true;

  friend bool operator==(const TrajectoryStats&, const TrajectoryStats&) = default;
};

struct SimulationResult {
  WalkConfig config;
  std::vector<TrajectoryStats> trajectories;
  bool truncated = false;
};

SimulationResult simulate(const WalkConfig& config);

struct Estimate {
  double mean = 0;
  double std_error = 0;
  std::size_t samples = 0;
};

/// Mean over trajectories of the dist slope, standard error across trajectories.
/// Throws Error when steps < 2 or every trajectory stays at distance 0.
Estimate estimate_speed(const SimulationResult& result);

struct ProbeCheck {
  std::size_t index = 0;
  Probe probe;
  Estimate slope;
  /// On the tree whose height tends to -inf and not gamma.
  bool opposite = false;
  bool within = false;
};

struct KLReport {
  Estimate speed;
  Estimate height_slope;
  /// +1 when h1 -> +inf, -1 when h1 -> -inf, 0 in the zero-speed regime.
  int escape_sign = 0;
  bool zero_speed = false;
  double tolerance = 0.05;
  double zero_threshold = 0.05;
  bool height_ok = false;
  /// "h2" when h1 -> +inf, "h1" otherwise.
  std::string lln_function;
  Estimate lln_slope;
  bool lln_ok = false;
  std::vector<ProbeCheck> probes;
  bool probes_ok = false;

  /// Drift identities hold, or the run is in the zero-speed regime.
  bool ok() const noexcept { return zero_speed || (height_ok && lln_ok && probes_ok); }
};

KLReport kl_report(const SimulationResult& result, double tolerance = 0.05, double zero_threshold = 0.05);

/// Header "n,dist,height,probe_<i>..." then one line per record.
void write_csv(std::ostream& out, const SimulationResult& result, const TrajectoryStats& trajectory);

}  // namespace horo
