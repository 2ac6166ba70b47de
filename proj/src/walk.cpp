#include "horo/walk.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <ostream>

#include "horo/error.hpp"

namespace horo {

namespace {

Rational reduce(std::int64_t num, std::int64_t den) {
  if (den == 0) throw ParseError("zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  return g > 1 ? Rational{num / g, den / g} : Rational{num, den};
}

std::int64_t parse_int(std::string_view text, std::string_view whole) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ParseError("invalid rational '" + std::string(whole) + "'");
  }
  return v;
}

// Decimal with optional fraction and exponent, e.g. "-0.25", "8e-01".
Rational parse_decimal(std::string_view text) {
  std::string_view mantissa = text;
  std::int64_t exponent = 0;
  if (const auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    mantissa = text.substr(0, e);
    auto exp_text = text.substr(e + 1);
    if (!exp_text.empty() && exp_text.front() == '+') exp_text.remove_prefix(1);
    exponent = parse_int(exp_text, text);
  }
  bool negative = false;
  if (!mantissa.empty() && (mantissa.front() == '-' || mantissa.front() == '+')) {
    negative = mantissa.front() == '-';
    mantissa.remove_prefix(1);
  }
  std::string digits;
  std::int64_t scale = 0;
  bool seen_dot = false;
  for (char c : mantissa) {
    if (c == '.' && !seen_dot) {
      seen_dot = true;
    } else if (c >= '0' && c <= '9') {
      digits.push_back(c);
      if (seen_dot) ++scale;
    } else {
      throw ParseError("invalid rational '" + std::string(text) + "'");
    }
  }
  if (digits.empty()) throw ParseError("invalid rational '" + std::string(text) + "'");
  scale -= exponent;
  std::int64_t num = parse_int(digits, text);
  std::int64_t den = 1;
  constexpr std::int64_t kMax = 1'000'000'000'000'000'000;
  for (; scale > 0; --scale) {
    if (den > kMax / 10) throw ParseError("rational '" + std::string(text) + "' needs too many digits");
    den *= 10;
  }
  for (; scale < 0; ++scale) {
    if (num > kMax / 10) throw ParseError("rational '" + std::string(text) + "' is too large");
    num *= 10;
  }
  return reduce(negative ? -num : num, den);
}

struct Fit {
  __int128 m = 0, sn = 0, snn = 0, sy = 0, sny = 0;

  void add(std::int64_t n, std::int64_t y) {
    ++m;
    sn += n;
    snn += static_cast<__int128>(n) * n;
    sy += y;
    sny += static_cast<__int128>(n) * y;
  }

  double slope() const {
    const __int128 den = m * snn - sn * sn;
    if (den == 0) return 0;
    const __int128 num = m * sny - sn * sy;
    return static_cast<double>(static_cast<long double>(num) / static_cast<long double>(den));
  }
};

Estimate summarize(const std::vector<double>& xs) {
  Estimate e;
  e.samples = xs.size();
  if (xs.empty()) return e;
  double sum = 0;
  for (double x : xs) sum += x;
  e.mean = sum / static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0;
    for (double x : xs) ss += (x - e.mean) * (x - e.mean);
    e.std_error = std::sqrt(ss / static_cast<double>(xs.size() - 1) / static_cast<double>(xs.size()));
  }
  return e;
}

// Tracks N(x, ray) for one tree coordinate under single-edge moves.
struct ProbeState {
  int tree;
  RayAddress ray;
  std::int64_t n = 0;

  void after_ray_move(const VertexAddress& x) { n = ray.is_gamma() ? x.branch : std::min(x.branch, ray.branch()); }
  void before_push(const VertexAddress& x, Label c) {
    if (ray.is_gamma()) return;
    if (n == x.depth() && x.branch == ray.branch() && ray.letter(x.suffix.size()) == c) ++n;
  }
  void after_pop(const VertexAddress& x) { n = std::min(n, x.depth()); }
  std::int64_t value(const VertexAddress& x) const { return x.depth() - 2 * n; }
};

class Walker {
 public:
  Walker(const WalkConfig& config) : config_(config) {
    for (const auto& p : config.probes) probes_.push_back({p.tree, p.ray, 0});
  }

  const DLVertex& vertex() const { return v_; }

  void step(WalkRng& rng) {
    const auto& p = config_.p_up;
    const bool up = rng.bounded(static_cast<std::uint64_t>(p.den)) < static_cast<std::uint64_t>(p.num);
    if (up) {
      climb(1, v_.x1, config_.spec.first, rng);
      descend(2, v_.x2);
    } else {
      descend(1, v_.x1);
      climb(2, v_.x2, config_.spec.second, rng);
    }
  }

  void record(std::uint64_t n, WalkRecord& r) const {
    r.n = n;
    r.height = v_.height();
    r.dist = v_.x1.depth() + v_.x2.depth() - std::llabs(r.height);
    r.probes.resize(probes_.size());
    for (std::size_t i = 0; i < probes_.size(); ++i) {
      r.probes[i] = probes_[i].value(probes_[i].tree == 1 ? v_.x1 : v_.x2);
    }
  }

 private:
  void climb(int tree, VertexAddress& x, const TreeSpec& spec, WalkRng& rng) {
    const bool ray_parent = x.suffix.empty() && x.branch > 0;
    const auto count = static_cast<std::uint64_t>(spec.child_count(x)) + (ray_parent ? 1 : 0);
    auto i = rng.bounded(count);
    if (ray_parent) {
      if (i == 0) {
        --x.branch;
        for (auto& p : probes_) {
          if (p.tree == tree) p.after_ray_move(x);
        }
        return;
      }
      --i;
    }
    const auto c = static_cast<Label>(i);
    for (auto& p : probes_) {
      if (p.tree == tree) p.before_push(x, c);
    }
    x.suffix.push_back(c);
  }

  void descend(int tree, VertexAddress& x) {
    if (x.suffix.empty()) {
      ++x.branch;
      for (auto& p : probes_) {
        if (p.tree == tree) p.after_ray_move(x);
      }
    } else {
      x.suffix.pop_back();
      for (auto& p : probes_) {
        if (p.tree == tree) p.after_pop(x);
      }
    }
  }

  const WalkConfig& config_;
  DLVertex v_ = base_vertex();
  std::vector<ProbeState> probes_;
};

TrajectoryStats run_trajectory(const WalkConfig& config, std::uint64_t index, std::uint64_t steps) {
  TrajectoryStats t;
  t.index = index;
  t.steps_done = steps;
  WalkRng rng(config.seed, index);
  Walker walker(config);
  const std::uint64_t half = steps / 2;
  Fit dist_fit;
  Fit height_fit;
  std::vector<Fit> probe_fits(config.probes.size());

  WalkRecord prev;
  WalkRecord r;
  walker.record(0, prev);
  auto observe = [&](const WalkRecord& r) {
    if (r.n >= half) {
      const auto n = static_cast<std::int64_t>(r.n);
      dist_fit.add(n, r.dist);
      height_fit.add(n, r.height);
      for (std::size_t i = 0; i < probe_fits.size(); ++i) probe_fits[i].add(n, r.probes[i]);
    }
    if (config.record_stride > 0 && (r.n % config.record_stride == 0 || r.n == steps)) t.records.push_back(r);
  };
  observe(prev);
  for (std::uint64_t n = 1; n <= steps; ++n) {
    walker.step(rng);
    walker.record(n, r);
    t.max_dist_jump = std::max<std::int64_t>(t.max_dist_jump, std::llabs(r.dist - prev.dist));
    t.unit_height_steps = t.unit_height_steps && std::llabs(r.height - prev.height) == 1;
    observe(r);
    std::swap(prev, r);
  }
  t.last = std::move(prev);
  t.dist_slope = dist_fit.slope();
  t.height_slope = height_fit.slope();
  for (const auto& f : probe_fits) t.probe_slopes.push_back(f.slope());
  return t;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    return reduce(parse_int(text.substr(0, slash), text), parse_int(text.substr(slash + 1), text));
  }
  return parse_decimal(text);
}

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw ParseError("non-finite rational");
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc{}) throw ParseError("cannot format number");
  return parse_decimal(std::string_view(buf, static_cast<std::size_t>(ptr - buf)));
}

std::string to_string(const Rational& r) {
  if (r.den == 1) return std::to_string(r.num);
  return std::to_string(r.num) + "/" + std::to_string(r.den);
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

WalkRng::WalkRng(std::uint64_t seed, std::uint64_t index)
    : engine_(splitmix64(seed + index * 0x9e3779b97f4a7c15ULL)) {}

std::uint64_t WalkRng::bounded(std::uint64_t n) {
  const std::uint64_t threshold = (0 - n) % n;
  while (true) {
    const std::uint64_t r = engine_();
    if (r >= threshold) return r % n;
  }
}

void validate(const WalkConfig& config) {
  const auto& p = config.p_up;
  if (p.den <= 0 || p.num < 0 || p.num > p.den) throw SpecError("p_up must lie in [0, 1]");
  if (config.trajectories == 0) throw SpecError("trajectories must be at least 1");
  for (const auto& probe : config.probes) {
    if (probe.tree != 1 && probe.tree != 2) throw SpecError("probe tree must be 1 or 2");
    require_valid_ray(probe.tree == 1 ? config.spec.first : config.spec.second, probe.ray);
  }
}

DLVertex step(const DLSpec& spec, const DLVertex& v, const Rational& p_up, WalkRng& rng) {
  const bool up = rng.bounded(static_cast<std::uint64_t>(p_up.den)) < static_cast<std::uint64_t>(p_up.num);
  auto moves = up ? dl_up_neighbors(spec, v) : dl_down_neighbors(spec, v);
  return moves[rng.bounded(moves.size())];
}

SimulationResult simulate(const WalkConfig& config) {
  validate(config);
  SimulationResult result;
  result.config = config;
  std::uint64_t budget = config.max_total_steps;
  for (std::uint64_t t = 0; t < config.trajectories; ++t) {
    if (budget == 0 && config.steps > 0) {
      result.truncated = true;
      break;
    }
    const std::uint64_t steps = std::min(config.steps, budget);
    if (steps < config.steps) result.truncated = true;
    budget -= steps;
    result.trajectories.push_back(run_trajectory(config, t, steps));
  }
  return result;
}

Estimate estimate_speed(const SimulationResult& result) {
  if (result.config.steps < 2) throw Error("speed estimate needs at least 2 steps");
  std::vector<double> slopes;
  bool moved = false;
  for (const auto& t : result.trajectories) {
    slopes.push_back(t.dist_slope);
    moved = moved || t.last.dist != 0 || t.dist_slope != 0;
  }
  if (!moved) throw Error("degenerate trajectories: distance stays 0");
  return summarize(slopes);
}

KLReport kl_report(const SimulationResult& result, double tolerance, double zero_threshold) {
  KLReport r;
  r.tolerance = tolerance;
  r.zero_threshold = zero_threshold;
  r.speed = estimate_speed(result);
  std::vector<double> heights;
  for (const auto& t : result.trajectories) heights.push_back(t.height_slope);
  r.height_slope = summarize(heights);
  r.zero_speed = r.speed.mean <= zero_threshold;
  if (!r.zero_speed) r.escape_sign = r.height_slope.mean > 0 ? 1 : -1;

  const double a = r.speed.mean;
  r.height_ok = !r.zero_speed && std::abs(r.height_slope.mean - r.escape_sign * a) <= tolerance;
  r.lln_function = r.escape_sign > 0 ? "h2" : "h1";
  r.lln_slope = r.height_slope;
  if (r.escape_sign > 0) r.lln_slope.mean = -r.height_slope.mean;
  r.lln_ok = !r.zero_speed && std::abs(r.lln_slope.mean + a) <= tolerance;

  const int opposite_tree = r.escape_sign > 0 ? 2 : 1;
  r.probes_ok = !r.zero_speed;
  for (std::size_t i = 0; i < result.config.probes.size(); ++i) {
    ProbeCheck c;
    c.index = i;
    c.probe = result.config.probes[i];
    std::vector<double> slopes;
    for (const auto& t : result.trajectories) slopes.push_back(t.probe_slopes[i]);
    c.slope = summarize(slopes);
    c.opposite = !r.zero_speed && c.probe.tree == opposite_tree && !c.probe.ray.is_gamma();
    c.within = c.opposite && std::abs(c.slope.mean - a) <= tolerance;
    if (c.opposite && !c.within) r.probes_ok = false;
    r.probes.push_back(std::move(c));
  }
  return r;
}

void write_csv(std::ostream& out, const SimulationResult& result, const TrajectoryStats& trajectory) {
  out << "n,dist,height";
  for (std::size_t i = 0; i < result.config.probes.size(); ++i) out << ",probe_" << i;
  out << '\n';
  for (const auto& r : trajectory.records) {
    out << r.n << ',' << r.dist << ',' << r.height;
    for (auto v : r.probes) out << ',' << v;
    out << '\n';
  }
}

}  // namespace horo
