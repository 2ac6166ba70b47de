#include "horo/tree.hpp"

#include <algorithm>
#include <charconv>

#include "horo/error.hpp"

namespace horo {

namespace {

std::int64_t parse_int(std::string_view text, std::string_view what) {
  std::int64_t value = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (text.empty() || ec != std::errc{} || ptr != last) {
    throw ParseError("invalid " + std::string(what) + ": '" + std::string(text) + "'");
  }
  return value;
}

std::size_t mix(std::size_t seed, std::uint64_t value) noexcept {
  value += 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
  return seed ^ static_cast<std::size_t>(value * 0xbf58476d1ce4e5b9ULL);
}

void check_degree_list(const std::vector<int>& degrees, const char* name) {
  if (degrees.empty()) throw SpecError(std::string(name) + " must be non-empty");
  for (int d : degrees) {
    if (d < 1) throw SpecError(std::string(name) + " entries must be positive");
  }
}

void collect_ball(const TreeSpec& spec, VertexAddress& v, std::int64_t radius,
                  std::vector<VertexAddress>& out) {
  out.push_back(v);
  if (v.depth() >= radius) return;
  const int children = spec.child_count(v);
  for (int c = 0; c < children; ++c) {
    v.suffix.push_back(static_cast<Label>(c));
    collect_ball(spec, v, radius, out);
    v.suffix.pop_back();
  }
}

}  // namespace

std::string to_string(const VertexAddress& v) {
  std::string out = std::to_string(v.branch);
  out.push_back(';');
  for (std::size_t i = 0; i < v.suffix.size(); ++i) {
    if (i) out.push_back('.');
    out += std::to_string(v.suffix[i]);
  }
  return out;
}

VertexAddress parse_vertex(std::string_view text) {
  const auto semi = text.find(';');
  if (semi == std::string_view::npos) {
    throw ParseError("vertex address needs ';': '" + std::string(text) + "'");
  }
  VertexAddress v;
  v.branch = parse_int(text.substr(0, semi), "branch index");
  if (v.branch < 0) throw ParseError("negative branch index: '" + std::string(text) + "'");
  std::string_view rest = text.substr(semi + 1);
  while (!rest.empty()) {
    const auto dot = rest.find('.');
    const auto piece = rest.substr(0, dot);
    const auto label = parse_int(piece, "child label");
    if (label < 0 || label > static_cast<std::int64_t>(UINT32_MAX)) {
      throw ParseError("child label out of range: '" + std::string(piece) + "'");
    }
    v.suffix.push_back(static_cast<Label>(label));
    if (dot == std::string_view::npos) break;
    rest = rest.substr(dot + 1);
    if (rest.empty()) throw ParseError("trailing '.' in '" + std::string(text) + "'");
  }
  return v;
}

std::size_t VertexAddressHash::operator()(const VertexAddress& v) const noexcept {
  std::size_t h = mix(0, static_cast<std::uint64_t>(v.branch));
  for (Label c : v.suffix) h = mix(h, c);
  return mix(h, v.suffix.size());
}

TreeSpec::TreeSpec(Family family, int min_degree) : family_(std::move(family)), min_degree_(min_degree) {
  if (min_degree != 2 && min_degree != 3) throw SpecError("min_degree must be 2 or 3");
  std::visit(
      [&](const auto& f) {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, RegularFamily>) {
          if (f.degree < 2) throw SpecError("regular degree must be >= 2");
        } else if constexpr (std::is_same_v<F, RayPeriodicFamily>) {
          check_degree_list(f.ray_degrees, "ray_degrees");
          check_degree_list(f.off_ray_degrees, "off_ray_degrees");
        } else if constexpr (std::is_same_v<F, ExplicitCoreFamily>) {
          if (f.radius < 0) throw SpecError("explicit core radius must be >= 0");
          if (f.tail_degree < 2) throw SpecError("tail_degree must be >= 2");
          if (f.core_degree < 1) throw SpecError("core_degree must be positive");
          for (const auto& [address, d] : f.overrides) {
            if (d < 1) throw SpecError("override degree must be positive at " + to_string(address));
            if (address.depth() > f.radius) {
              throw SpecError("override outside the core radius: " + to_string(address));
            }
          }
        } else if constexpr (std::is_same_v<F, CallbackFamily>) {
          if (!f.degree) throw SpecError("callback family needs a degree function");
        }
      },
      family_);
  if (const auto* core = std::get_if<ExplicitCoreFamily>(&family_)) {
    for (const auto& [address, d] : core->overrides) {
      if (!is_canonical(*this, address)) {
        throw SpecError("override names a vertex that does not exist: " + to_string(address));
      }
    }
  }
}

TreeSpec TreeSpec::regular(int degree, int min_degree) {
  return TreeSpec(RegularFamily{degree}, min_degree);
}

TreeSpec TreeSpec::line(int min_degree) { return TreeSpec(LineFamily{}, min_degree); }

int TreeSpec::degree(const VertexAddress& v) const {
  return std::visit(
      [&](const auto& f) -> int {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, RegularFamily>) {
          return f.degree;
        } else if constexpr (std::is_same_v<F, LineFamily>) {
          return 2;
        } else if constexpr (std::is_same_v<F, RayPeriodicFamily>) {
          if (v.suffix.empty()) {
            return f.ray_degrees[static_cast<std::size_t>(v.branch) % f.ray_degrees.size()];
          }
          return f.off_ray_degrees[(v.suffix.size() - 1) % f.off_ray_degrees.size()];
        } else if constexpr (std::is_same_v<F, ExplicitCoreFamily>) {
          if (v.depth() > f.radius) return f.tail_degree;
          auto it = f.overrides.find(v);
          return it == f.overrides.end() ? f.core_degree : it->second;
        } else {
          return f.degree(v);
        }
      },
      family_);
}

int TreeSpec::child_count(const VertexAddress& v) const {
  const int d = degree(v);
  const int reserved = (v.suffix.empty() && v.branch > 0) ? 2 : 1;
  return std::max(0, d - reserved);
}

bool operator==(const TreeSpec& a, const TreeSpec& b) {
  if (a.min_degree_ != b.min_degree_ || a.family_.index() != b.family_.index()) return false;
  return std::visit(
      [&](const auto& fa) -> bool {
        using F = std::decay_t<decltype(fa)>;
        const auto& fb = std::get<F>(b.family_);
        if constexpr (std::is_same_v<F, RegularFamily>) {
          return fa.degree == fb.degree;
        } else if constexpr (std::is_same_v<F, LineFamily>) {
          return true;
        } else if constexpr (std::is_same_v<F, RayPeriodicFamily>) {
          return fa.ray_degrees == fb.ray_degrees && fa.off_ray_degrees == fb.off_ray_degrees;
        } else if constexpr (std::is_same_v<F, ExplicitCoreFamily>) {
          return fa.radius == fb.radius && fa.core_degree == fb.core_degree &&
                 fa.overrides == fb.overrides && fa.tail_degree == fb.tail_degree;
        } else {
          return &fa == &fb;
        }
      },
      a.family_);
}

ValidationReport validate_spec(const TreeSpec& spec) {
  ValidationReport report;
  const int need = spec.min_degree();
  auto check = [&](const VertexAddress& v) {
    const int d = spec.degree(v);
    const bool interior_ray = v.suffix.empty() && v.branch > 0;
    if (interior_ray && d < 2) {
      report.violations.push_back({v, d, "ray vertex needs both ray neighbors"});
    } else if (d < need) {
      report.violations.push_back(
          {v, d, "degree " + std::to_string(d) + " below required " + std::to_string(need)});
    }
  };

  std::visit(
      [&](const auto& f) {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, RegularFamily> || std::is_same_v<F, LineFamily>) {
          check(base_address());
        } else if constexpr (std::is_same_v<F, RayPeriodicFamily>) {
          for (std::size_t i = 0; i <= f.ray_degrees.size(); ++i) {
            check(ray_vertex(static_cast<std::int64_t>(i)));
          }
          VertexAddress v;
          for (std::size_t j = 0; j < f.off_ray_degrees.size(); ++j) {
            v.suffix.push_back(0);
            if (!is_canonical(spec, v)) break;
            check(v);
          }
        } else if constexpr (std::is_same_v<F, ExplicitCoreFamily>) {
          for (const auto& v : enumerate_ball(spec, f.radius)) check(v);
          check(ray_vertex(f.radius + 1));
        } else {
          report.exhaustive = false;
          for (const auto& v : enumerate_ball(spec, 6)) check(v);
        }
      },
      spec.family());
  return report;
}

bool is_canonical(const TreeSpec& spec, const VertexAddress& v) {
  if (v.branch < 0) return false;
  VertexAddress prefix{v.branch, {}};
  prefix.suffix.reserve(v.suffix.size());
  for (Label c : v.suffix) {
    if (static_cast<std::int64_t>(c) >= spec.child_count(prefix)) return false;
    prefix.suffix.push_back(c);
  }
  return true;
}

void require_canonical(const TreeSpec& spec, const VertexAddress& v) {
  if (!is_canonical(spec, v)) throw AddressError("non-canonical address " + to_string(v));
}

int degree(const TreeSpec& spec, const VertexAddress& v) {
  require_canonical(spec, v);
  return spec.degree(v);
}

std::vector<VertexAddress> neighbors(const TreeSpec& spec, const VertexAddress& v) {
  require_canonical(spec, v);
  std::vector<VertexAddress> out;
  if (v.suffix.empty()) {
    if (v.branch > 0) out.push_back(ray_vertex(v.branch - 1));
    out.push_back(ray_vertex(v.branch + 1));
  } else {
    out.push_back(gamma_ward(v));
  }
  const int children = spec.child_count(v);
  for (int c = 0; c < children; ++c) {
    VertexAddress child = v;
    child.suffix.push_back(static_cast<Label>(c));
    out.push_back(std::move(child));
  }
  return out;
}

std::vector<VertexAddress> up_neighbors(const TreeSpec& spec, const VertexAddress& v) {
  std::vector<VertexAddress> out;
  if (v.suffix.empty() && v.branch > 0) out.push_back(ray_vertex(v.branch - 1));
  const int children = spec.child_count(v);
  for (int c = 0; c < children; ++c) {
    VertexAddress child = v;
    child.suffix.push_back(static_cast<Label>(c));
    out.push_back(std::move(child));
  }
  return out;
}

VertexAddress gamma_ward(const VertexAddress& v) {
  if (v.suffix.empty()) return ray_vertex(v.branch + 1);
  VertexAddress w = v;
  w.suffix.pop_back();
  return w;
}

std::int64_t common_prefix(const VertexAddress& v, const VertexAddress& w) {
  if (v.branch != w.branch) return std::min(v.branch, w.branch);
  const auto [a, b] = std::mismatch(v.suffix.begin(), v.suffix.end(), w.suffix.begin(), w.suffix.end());
  return v.branch + static_cast<std::int64_t>(a - v.suffix.begin());
}

std::int64_t dist(const VertexAddress& v, const VertexAddress& w) {
  return v.depth() + w.depth() - 2 * common_prefix(v, w);
}

std::int64_t busemann_point(const VertexAddress& z, const VertexAddress& y) {
  return dist(z, y) - z.depth();
}

std::vector<VertexAddress> enumerate_ball(const TreeSpec& spec, std::int64_t radius) {
  std::vector<VertexAddress> out;
  if (radius < 0) return out;
  for (std::int64_t n = 0; n <= radius; ++n) {
    VertexAddress v = ray_vertex(n);
    collect_ball(spec, v, radius, out);
  }
  std::stable_sort(out.begin(), out.end(), [](const VertexAddress& a, const VertexAddress& b) {
    if (a.depth() != b.depth()) return a.depth() < b.depth();
    return a < b;
  });
  return out;
}

}  // namespace horo
