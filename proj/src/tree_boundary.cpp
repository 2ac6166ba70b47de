#include "horo/tree_boundary.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <numeric>

#include "horo/error.hpp"

namespace horo {

namespace {

std::vector<Label> parse_word(std::string_view text, std::string_view context) {
  std::vector<Label> word;
  if (text.empty()) return word;
  std::size_t start = 0;
  while (true) {
    const auto dot = text.find('.', start);
    const auto piece = text.substr(start, dot == std::string_view::npos ? text.size() - start : dot - start);
    Label value = 0;
    auto [ptr, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), value);
    if (piece.empty() || ec != std::errc{} || ptr != piece.data() + piece.size()) {
      throw ParseError("invalid child label in '" + std::string(context) + "'");
    }
    word.push_back(value);
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  return word;
}

std::string join(const std::vector<Label>& word) {
  std::string out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i) out.push_back('.');
    out += std::to_string(word[i]);
  }
  return out;
}

std::size_t primitive_period(const std::vector<Label>& cycle) {
  const std::size_t n = cycle.size();
  for (std::size_t p = 1; p < n; ++p) {
    if (n % p != 0) continue;
    bool periodic = true;
    for (std::size_t i = p; i < n && periodic; ++i) periodic = cycle[i] == cycle[i - p];
    if (periodic) return p;
  }
  return n;
}

// Letters of a branching ray that must be inspected to certify validity: past the
// prefix and the spec's irregular horizon the pair (depth mod period, cycle phase)
// repeats with period dividing period * |cycle|.
std::size_t validity_horizon(const TreeSpec& spec, const RayAddress& ray, bool& exhaustive) {
  std::size_t horizon = 0;
  std::size_t period = 1;
  exhaustive = true;
  std::visit(
      [&](const auto& f) {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, RayPeriodicFamily>) {
          period = f.off_ray_degrees.size();
        } else if constexpr (std::is_same_v<F, ExplicitCoreFamily>) {
          horizon = static_cast<std::size_t>(f.radius) + 1;
        } else if constexpr (std::is_same_v<F, CallbackFamily>) {
          horizon = 64;
          exhaustive = false;
        }
      },
      spec.family());
  return ray.prefix().size() + horizon + ray.cycle().size() * (period + 1);
}

}  // namespace

RayAddress::RayAddress(std::int64_t branch, std::vector<Label> prefix, std::vector<Label> cycle)
    : gamma_(false), branch_(branch), prefix_(std::move(prefix)), cycle_(std::move(cycle)) {
  if (cycle_.empty()) throw SpecError("ray cycle must be non-empty");
  if (branch_ < 0) throw SpecError("ray branch index must be non-negative");
  cycle_.resize(primitive_period(cycle_));
  while (!prefix_.empty() && prefix_.back() == cycle_.back()) {
    prefix_.pop_back();
    std::rotate(cycle_.rbegin(), cycle_.rbegin() + 1, cycle_.rend());
  }
}

Label RayAddress::letter(std::size_t i) const {
  if (i < prefix_.size()) return prefix_[i];
  return cycle_[(i - prefix_.size()) % cycle_.size()];
}

VertexAddress RayAddress::vertex_at_depth(std::int64_t depth) const {
  if (gamma_ || depth <= branch_) return ray_vertex(depth);
  VertexAddress v{branch_, {}};
  const auto len = static_cast<std::size_t>(depth - branch_);
  v.suffix.reserve(len);
  for (std::size_t i = 0; i < len; ++i) v.suffix.push_back(letter(i));
  return v;
}

std::string to_string(const RayAddress& ray) {
  if (ray.is_gamma()) return "gamma";
  return std::to_string(ray.branch()) + ";" + join(ray.prefix()) + "(" + join(ray.cycle()) + ")";
}

RayAddress parse_ray(std::string_view text) {
  if (text == "gamma") return RayAddress::gamma();
  const auto semi = text.find(';');
  const auto open = text.find('(');
  if (semi == std::string_view::npos || open == std::string_view::npos || open < semi ||
      text.size() < open + 2 || text.back() != ')') {
    throw ParseError("ray must be 'gamma' or 'n;prefix(cycle)': '" + std::string(text) + "'");
  }
  const auto branch_text = text.substr(0, semi);
  std::int64_t branch = 0;
  auto [ptr, ec] = std::from_chars(branch_text.data(), branch_text.data() + branch_text.size(), branch);
  if (branch_text.empty() || ec != std::errc{} || ptr != branch_text.data() + branch_text.size() ||
      branch < 0) {
    throw ParseError("invalid ray branch index in '" + std::string(text) + "'");
  }
  auto prefix = parse_word(text.substr(semi + 1, open - semi - 1), text);
  auto cycle = parse_word(text.substr(open + 1, text.size() - open - 2), text);
  if (cycle.empty()) throw ParseError("ray cycle must be non-empty: '" + std::string(text) + "'");
  return RayAddress(branch, std::move(prefix), std::move(cycle));
}

bool is_valid_ray(const TreeSpec& spec, const RayAddress& ray) {
  if (ray.is_gamma()) return true;
  bool exhaustive = true;
  const std::size_t letters = validity_horizon(spec, ray, exhaustive);
  VertexAddress v = ray_vertex(ray.branch());
  for (std::size_t i = 0; i < letters; ++i) {
    const Label c = ray.letter(i);
    if (static_cast<std::int64_t>(c) >= spec.child_count(v)) return false;
    v.suffix.push_back(c);
  }
  return true;
}

void require_valid_ray(const TreeSpec& spec, const RayAddress& ray) {
  if (!is_valid_ray(spec, ray)) throw AddressError("ray not valid in this tree: " + to_string(ray));
}

std::int64_t common_prefix(const VertexAddress& v, const RayAddress& ray) {
  if (ray.is_gamma()) return v.branch;
  if (v.branch != ray.branch()) return std::min(v.branch, ray.branch());
  std::size_t i = 0;
  while (i < v.suffix.size() && v.suffix[i] == ray.letter(i)) ++i;
  return v.branch + static_cast<std::int64_t>(i);
}

std::optional<std::int64_t> common_prefix(const RayAddress& a, const RayAddress& b) {
  if (a == b) return std::nullopt;
  if (a.is_gamma()) return b.branch();
  if (b.is_gamma()) return a.branch();
  if (a.branch() != b.branch()) return std::min(a.branch(), b.branch());
  const std::size_t bound = std::max(a.prefix().size(), b.prefix().size()) +
                            std::lcm(a.cycle().size(), b.cycle().size());
  for (std::size_t i = 0; i < bound; ++i) {
    if (a.letter(i) != b.letter(i)) return a.branch() + static_cast<std::int64_t>(i);
  }
  // Canonical forms are unique, so distinct rays differ within the bound.
  throw Error("internal: distinct canonical rays agree on " + std::to_string(bound) + " letters");
}

BoundaryDistance boundary_distance(const RayAddress& a, const RayAddress& b) {
  return BoundaryDistance{common_prefix(a, b)};
}

VertexAddress confluent_with_ray(const VertexAddress& v, const RayAddress& ray) {
  const std::int64_t n = common_prefix(v, ray);
  if (n <= v.branch) return ray_vertex(n);
  VertexAddress c{v.branch, {}};
  c.suffix.assign(v.suffix.begin(), v.suffix.begin() + (n - v.branch));
  return c;
}

std::int64_t busemann_ray(const RayAddress& ray, const VertexAddress& y) {
  return y.depth() - 2 * common_prefix(y, ray);
}

std::int64_t c_k(std::int64_t k, const VertexAddress& v) {
  return std::llabs(k) - std::llabs(k - height(v));
}

std::int64_t level_set_count(const TreeSpec& spec, std::int64_t k, std::int64_t radius) {
  const auto ball = enumerate_ball(spec, radius);
  return std::count_if(ball.begin(), ball.end(), [k](const VertexAddress& v) { return height(v) == k; });
}

LevelSetReport level_set_report(const TreeSpec& spec, std::int64_t k, std::int64_t max_radius) {
  LevelSetReport report;
  report.k = k;
  const auto ball = enumerate_ball(spec, max_radius);
  std::vector<std::int64_t> at_depth(static_cast<std::size_t>(std::max<std::int64_t>(max_radius, 0) + 1), 0);
  for (const auto& v : ball) {
    if (height(v) == k) ++at_depth[static_cast<std::size_t>(v.depth())];
  }
  std::int64_t running = 0;
  for (std::int64_t r = 0; r <= max_radius; ++r) {
    running += at_depth[static_cast<std::size_t>(r)];
    report.sampled_counts.emplace_back(r, running);
  }
  const auto& counts = report.sampled_counts;
  if (counts.size() >= 3 && counts.back().second > counts[counts.size() - 3].second) {
    report.verdict = LevelSetVerdict::Infinite;
  }
  return report;
}

FSet f_set(const TreeSpec& spec) {
  return std::visit(
      [](const auto& f) -> FSet {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, RegularFamily>) {
          return f.degree >= 3 ? FSet::AllIntegers : FSet::Empty;
        } else if constexpr (std::is_same_v<F, LineFamily>) {
          return FSet::Empty;
        } else if constexpr (std::is_same_v<F, RayPeriodicFamily>) {
          const bool branching = std::any_of(f.ray_degrees.begin(), f.ray_degrees.end(),
                                             [](int d) { return d >= 3; });
          return branching ? FSet::AllIntegers : FSet::Empty;
        } else if constexpr (std::is_same_v<F, ExplicitCoreFamily>) {
          return f.tail_degree >= 3 ? FSet::AllIntegers : FSet::Empty;
        } else {
          throw UndecidableError("F(T) is undecidable for callback family '" + f.name + "'");
        }
      },
      spec.family());
}

std::string to_string(FSet set) { return set == FSet::AllIntegers ? "all_integers" : "empty"; }

}  // namespace horo
