#include "horo/limits.hpp"

#include <algorithm>
#include <cstdlib>

#include "horo/error.hpp"
#include "horo/kernels/kernels.hpp"

namespace horo {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr std::uint64_t kScanCap = 4096;

const TreeSpec& tree(const DLSpec& spec, int side) { return side == 1 ? spec.first : spec.second; }

void require_infinite_level(const TreeSpec& spec, std::int64_t level, const char* which) {
  if (spec.decidable() && f_set(spec) == FSet::Empty) {
    throw FamilyError(std::string("level set H_") + std::to_string(level) + " of " + which +
                      " is finite; no divergent sequence at that level");
  }
}

// Ray indices m >= 1 whose vertex z_m has an off-ray child, in increasing order.
class BranchingIndices {
 public:
  explicit BranchingIndices(const TreeSpec& spec) : spec_(&spec) {}

  std::int64_t at(std::uint64_t n) {
    while (found_.size() <= n) {
      std::uint64_t skipped = 0;
      while (spec_->child_count(ray_vertex(next_)) == 0) {
        ++next_;
        if (++skipped > kScanCap) throw FamilyError("no further branching vertex on gamma");
      }
      found_.push_back(next_++);
    }
    return found_[n];
  }

  /// Number of branching indices in [1, bound].
  std::uint64_t count_up_to(std::int64_t bound) {
    std::uint64_t n = 0;
    while (at(n) <= bound) ++n;
    return n;
  }

 private:
  const TreeSpec* spec_;
  std::int64_t next_ = 1;
  std::vector<std::int64_t> found_;
};

VertexAddress climbing(std::int64_t branch, std::int64_t height) {
  VertexAddress v{branch, {}};
  v.suffix.assign(static_cast<std::size_t>(height + branch), 0);
  return v;
}

std::uint64_t ceil_div(std::int64_t num, std::int64_t den) {
  if (num <= 0) return 0;
  return static_cast<std::uint64_t>((num + den - 1) / den);
}

// Position of the first element of H_level with branch index > bound.
std::uint64_t first_deep_position(const TreeSpec& spec, std::int64_t level, std::int64_t bound) {
  LevelSetEnumerator e(spec, level, kScanCap);
  while (e.current().branch <= bound) e.advance();
  return e.position();
}

std::vector<VertexAddress> level_terms(const TreeSpec& spec, std::int64_t level, std::uint64_t start,
                                       std::uint64_t stride, std::uint64_t begin, std::uint64_t end) {
  std::vector<VertexAddress> out;
  if (begin >= end) return out;
  out.reserve(end - begin);
  LevelSetEnumerator e(spec, level, kScanCap);
  e.seek(start + begin * stride);
  for (std::uint64_t n = begin; n < end; ++n) {
    if (n > begin) e.seek(e.position() + stride);
    out.push_back(e.current());
  }
  return out;
}

void check_stride(std::uint64_t stride) {
  if (stride == 0) throw FamilyError("stride must be positive");
}

std::vector<DLVertex> raw_terms(const DLSpec& spec, const SequenceFamily& family, std::uint64_t begin,
                                std::uint64_t end) {
  std::vector<DLVertex> out;
  if (begin >= end) return out;
  out.reserve(end - begin);
  std::visit(
      overloaded{
          [&](const EventuallyConstantFamily& f) {
            for (std::uint64_t n = begin; n < end; ++n) {
              out.push_back(n < f.prefix.size() ? f.prefix[n] : f.vertex);
            }
          },
          [&](const RadialRayFamily& f) {
            if (f.side != 1 && f.side != 2) throw FamilyError("radial side must be 1 or 2");
            if (f.start_height < 1 || f.stride < 1 || f.offset < 0) {
              throw FamilyError("radial family needs start_height >= 1, stride >= 1, offset >= 0");
            }
            const TreeSpec& moving = tree(spec, f.side);
            std::optional<BranchingIndices> branching;
            if (f.ray.is_gamma()) {
              require_infinite_level(moving, f.start_height, f.side == 1 ? "tree 1" : "tree 2");
              branching.emplace(moving);
            }
            for (std::uint64_t n = begin; n < end; ++n) {
              const std::int64_t h = f.start_height + static_cast<std::int64_t>(n) * f.stride;
              VertexAddress mover = branching ? climbing(branching->at(n), h)
                                              : f.ray.vertex_at_depth(h + 2 * f.ray.branch());
              VertexAddress other{h + f.offset, std::vector<Label>(static_cast<std::size_t>(f.offset), 0)};
              out.push_back(f.side == 1 ? DLVertex{std::move(mover), std::move(other)}
                                        : DLVertex{std::move(other), std::move(mover)});
            }
          },
          [&](const HorocyclicFamily& f) {
            check_stride(f.stride);
            require_infinite_level(spec.first, f.level, "tree 1");
            require_infinite_level(spec.second, -f.level, "tree 2");
            auto a = level_terms(spec.first, f.level, f.start, f.stride, begin, end);
            auto b = level_terms(spec.second, -f.level, f.start, f.stride, begin, end);
            for (std::size_t i = 0; i < a.size(); ++i) out.push_back({std::move(a[i]), std::move(b[i])});
          },
          [&](const FixedSecondFamily& f) {
            check_stride(f.stride);
            const std::int64_t level = -height(f.x2);
            require_infinite_level(spec.first, level, "tree 1");
            for (auto& x1 : level_terms(spec.first, level, f.start, f.stride, begin, end)) {
              out.push_back({std::move(x1), f.x2});
            }
          },
          [&](const FixedFirstFamily& f) {
            check_stride(f.stride);
            const std::int64_t level = -height(f.x1);
            require_infinite_level(spec.second, level, "tree 2");
            for (auto& x2 : level_terms(spec.second, level, f.start, f.stride, begin, end)) {
              out.push_back({f.x1, std::move(x2)});
            }
          },
          [&](const CustomFamily& f) {
            if (!f.interleave.empty()) {
              const std::uint64_t k = f.interleave.size();
              out.resize(end - begin);
              for (std::uint64_t j = 0; j < k; ++j) {
                const std::uint64_t sub_begin = begin > j ? (begin - j + k - 1) / k : 0;
                const std::uint64_t sub_end = end > j ? (end - j + k - 1) / k : 0;
                auto part = raw_terms(spec, f.interleave[j], sub_begin, sub_end);
                for (std::uint64_t q = sub_begin; q < sub_end; ++q) {
                  out[q * k + j - begin] = std::move(part[q - sub_begin]);
                }
              }
            } else if (f.generator) {
              for (std::uint64_t n = begin; n < end; ++n) out.push_back(f.generator(n));
            } else {
              throw FamilyError("custom family needs an interleave list or a generator");
            }
          },
      },
      family.kind);
  return out;
}

BoundaryFunction from_components(const ComponentLimits& c) {
  auto p = boundary_point_from_hm({*c.first, *c.second, *c.height});
  if (!p) throw Error("internal: component limits outside the boundary strata");
  return theta(*p);
}

LimitReport classify_structured(const DLSpec& spec, const SequenceFamily& family, const ClassifyOptions& opt);

void fill_realizability(const DLSpec& spec, LimitReport& r) {
  if (!r.hm_limit) return;
  if (std::holds_alternative<InteriorPoint>(*r.hm_limit)) {
    r.realizable_per_component = true;
    r.realizable_literal = true;
    return;
  }
  const DLBoundaryPoint p = std::visit(
      overloaded{
          [](const InteriorPoint&) -> DLBoundaryPoint { return ZPoint{}; },
          [](const auto& x) -> DLBoundaryPoint { return x; },
      },
      *r.hm_limit);
  try {
    r.realizable_per_component = realizability(spec, p).realizable;
    r.realizable_literal = realizability_literal(spec, p).realizable;
  } catch (const UndecidableError&) {
    r.notes.push_back("realizability undecidable for callback trees");
  }
}

LimitReport classify_interleave(const DLSpec& spec, const CustomFamily& f, const ClassifyOptions& opt) {
  LimitReport r;
  r.radius = opt.radius;
  std::vector<LimitReport> parts;
  parts.reserve(f.interleave.size());
  for (const auto& part : f.interleave) parts.push_back(classify_structured(spec, part, opt));

  const auto undecided = std::find_if(parts.begin(), parts.end(),
                                      [](const LimitReport& p) { return p.verdict == Verdict::NotDecided; });
  if (undecided != parts.end()) {
    r.verdict = Verdict::NotDecided;
    r.notes.push_back("interleave contains an undecided part");
    return r;
  }

  const std::uint64_t k = parts.size();
  std::uint64_t settled = 0;
  for (const auto& p : parts) settled = std::max(settled, p.stabilization_index.value_or(0) * k);
  r.stabilization_index = settled;

  const auto& c0 = parts.front().components;
  r.components = c0;
  bool all_converge = true;
  for (const auto& p : parts) {
    all_converge = all_converge && p.verdict == Verdict::Converges;
    if (p.components.first != c0.first) r.components.first.reset();
    if (p.components.second != c0.second) r.components.second.reset();
    if (p.components.height != c0.height) r.components.height.reset();
  }
  const bool same_limit =
      all_converge && std::all_of(parts.begin(), parts.end(),
                                  [&](const LimitReport& p) { return p.hm_limit == parts.front().hm_limit; });
  if (same_limit) {
    r.verdict = Verdict::Converges;
    r.hm_limit = parts.front().hm_limit;
    r.busemann_limit = r.hm_limit;
    for (const auto& p : parts) r.notes.insert(r.notes.end(), p.notes.begin(), p.notes.end());
  } else {
    r.verdict = Verdict::NotConvergent;
    for (std::size_t j = 0; j < parts.size(); ++j) {
      r.notes.push_back("part " + std::to_string(j) + ": " +
                        (parts[j].hm_limit ? to_string(*parts[j].hm_limit) : to_string(parts[j].verdict)));
    }
  }
  return r;
}

LimitReport classify_generator(const DLSpec& spec, const SequenceFamily& family, const ClassifyOptions& opt) {
  LimitReport r;
  r.radius = opt.radius;
  r.heuristic_window = {opt.heuristic_begin, opt.heuristic_end};
  r.notes.push_back("opaque generator: verdict read off a finite window");
  const auto terms = family_terms(spec, family, opt.heuristic_begin, opt.heuristic_end);
  if (terms.empty()) return r;

  const bool all_same = std::all_of(terms.begin(), terms.end(), [&](const DLVertex& v) { return v == terms[0]; });
  if (all_same) {
    r.verdict = Verdict::Converges;
    r.components = {terms[0].x1, terms[0].x2, ExtendedInt::finite(terms[0].height())};
    r.hm_limit = InteriorPoint{terms[0]};
  } else {
    std::int64_t lo = terms[0].height();
    std::int64_t hi = lo;
    std::int64_t min_b1 = terms[0].x1.branch;
    std::int64_t min_b2 = terms[0].x2.branch;
    bool same_x1 = true;
    bool same_x2 = true;
    for (const auto& t : terms) {
      lo = std::min(lo, t.height());
      hi = std::max(hi, t.height());
      min_b1 = std::min(min_b1, t.x1.branch);
      min_b2 = std::min(min_b2, t.x2.branch);
      same_x1 = same_x1 && t.x1 == terms[0].x1;
      same_x2 = same_x2 && t.x2 == terms[0].x2;
    }
    const TreePoint gamma = RayAddress::gamma();
    if (lo == hi) {
      const auto eta = ExtendedInt::finite(lo);
      if (same_x1 && min_b2 > opt.radius) {
        r.components = {terms[0].x1, gamma, eta};
      } else if (same_x2 && min_b1 > opt.radius) {
        r.components = {gamma, terms[0].x2, eta};
      } else if (min_b1 > opt.radius && min_b2 > opt.radius) {
        r.components = {gamma, gamma, eta};
      }
      if (r.components.first) {
        r.verdict = Verdict::Converges;
        r.hm_limit = from_components(r.components);
      } else {
        r.notes.push_back("constant height but no recognizable divergence pattern");
      }
    } else {
      const std::size_t half = terms.size() / 2;
      std::int64_t lo2 = terms[half].height();
      std::int64_t hi2 = lo2;
      std::int64_t lo1 = terms[0].height();
      std::int64_t hi1 = lo1;
      for (std::size_t i = 0; i < terms.size(); ++i) {
        const auto h = terms[i].height();
        if (i < half) {
          lo1 = std::min(lo1, h);
          hi1 = std::max(hi1, h);
        } else {
          lo2 = std::min(lo2, h);
          hi2 = std::max(hi2, h);
        }
      }
      if (lo2 < hi2 && lo1 <= lo2 && hi2 <= hi1) {
        r.verdict = Verdict::NotConvergent;
        r.notes.push_back("height keeps oscillating inside a bounded band");
      } else {
        r.notes.push_back("height trend not decidable from the window");
      }
    }
  }
  if (r.verdict == Verdict::Converges) {
    r.busemann_limit = r.hm_limit;
    r.stabilization_index = opt.heuristic_begin;
  }
  return r;
}

LimitReport classify_structured(const DLSpec& spec, const SequenceFamily& family, const ClassifyOptions& opt) {
  const std::int64_t radius = opt.radius;
  const TreePoint gamma = RayAddress::gamma();
  if (const auto* custom = std::get_if<CustomFamily>(&family.kind)) {
    if (!custom->interleave.empty()) return classify_interleave(spec, *custom, opt);
    return classify_generator(spec, family, opt);
  }

  LimitReport r;
  r.radius = radius;
  r.verdict = Verdict::Converges;
  std::visit(
      overloaded{
          [&](const EventuallyConstantFamily& f) {
            std::size_t i = f.prefix.size();
            while (i > 0 && f.prefix[i - 1] == f.vertex) --i;
            r.stabilization_index = i;
            r.components = {f.vertex.x1, f.vertex.x2, ExtendedInt::finite(f.vertex.height())};
            r.hm_limit = InteriorPoint{f.vertex};
          },
          [&](const RadialRayFamily& f) {
            // Settled once H >= r, the opposite branch index H + offset >= r + 1 and,
            // along gamma, the climbing branch index >= r + 1.
            const std::int64_t h_min = std::max(radius, radius + 1 - f.offset);
            std::uint64_t n = ceil_div(h_min - f.start_height, std::max<std::int64_t>(f.stride, 1));
            if (f.ray.is_gamma()) {
              BranchingIndices branching(tree(spec, f.side));
              n = std::max(n, branching.count_up_to(radius));
              r.notes.push_back(std::string("moving coordinate converges to gamma") + (f.side == 1 ? "1" : "2") +
                                "; limit recorded as the closure point");
            }
            r.stabilization_index = n;
            if (f.side == 1) {
              r.components = {f.ray, gamma, ExtendedInt::plus_infinity()};
            } else {
              r.components = {gamma, f.ray, ExtendedInt::minus_infinity()};
            }
          },
          [&](const HorocyclicFamily& f) {
            const auto p = std::max(first_deep_position(spec.first, f.level, radius),
                                    first_deep_position(spec.second, -f.level, radius));
            r.stabilization_index = ceil_div(static_cast<std::int64_t>(p) - static_cast<std::int64_t>(f.start),
                                             static_cast<std::int64_t>(f.stride));
            r.components = {gamma, gamma, ExtendedInt::finite(f.level)};
          },
          [&](const FixedSecondFamily& f) {
            const auto p = first_deep_position(spec.first, -height(f.x2), radius);
            r.stabilization_index = ceil_div(static_cast<std::int64_t>(p) - static_cast<std::int64_t>(f.start),
                                             static_cast<std::int64_t>(f.stride));
            r.components = {gamma, f.x2, ExtendedInt::finite(-height(f.x2))};
          },
          [&](const FixedFirstFamily& f) {
            const auto p = first_deep_position(spec.second, -height(f.x1), radius);
            r.stabilization_index = ceil_div(static_cast<std::int64_t>(p) - static_cast<std::int64_t>(f.start),
                                             static_cast<std::int64_t>(f.stride));
            r.components = {f.x1, gamma, ExtendedInt::finite(height(f.x1))};
          },
          [](const CustomFamily&) {},
      },
      family.kind);
  if (!r.hm_limit) r.hm_limit = from_components(r.components);
  r.busemann_limit = r.hm_limit;

  // A finite height limit must be attained by the settled terms themselves.
  if (r.components.height && r.components.height->is_finite()) {
    const auto t = family_term(spec, family, *r.stabilization_index);
    if (t.height() != r.components.height->value) {
      throw Error("internal: height of settled term " + std::to_string(t.height()) + " differs from limit " +
                  to_string(*r.components.height));
    }
  }
  return r;
}

}  // namespace

LevelSetEnumerator::LevelSetEnumerator(const TreeSpec& spec, std::int64_t level, std::uint64_t scan_cap)
    : spec_(&spec), level_(level), scan_cap_(scan_cap) {
  enter_branch(std::max<std::int64_t>(0, -level));
}

void LevelSetEnumerator::enter_branch(std::int64_t m) {
  std::uint64_t skipped = 0;
  while (level_ + m > 0 && spec_->child_count(ray_vertex(m)) == 0) {
    ++m;
    if (++skipped > scan_cap_) {
      throw FamilyError("level set H_" + std::to_string(level_) + " exhausted after branch " +
                        std::to_string(m));
    }
  }
  current_ = VertexAddress{m, {}};
  const auto len = static_cast<std::size_t>(level_ + m);
  current_.suffix.reserve(len);
  for (std::size_t i = 0; i < len; ++i) {
    if (i > 0 && spec_->child_count(current_) == 0) throw FamilyError("leaf vertex " + to_string(current_));
    current_.suffix.push_back(0);
  }
}

bool LevelSetEnumerator::bump() {
  auto& word = current_.suffix;
  const std::size_t len = word.size();
  for (std::size_t i = len; i-- > 0;) {
    VertexAddress parent{current_.branch, std::vector<Label>(word.begin(), word.begin() + i)};
    if (static_cast<std::int64_t>(word[i]) + 1 < spec_->child_count(parent)) {
      ++word[i];
      for (std::size_t j = i + 1; j < len; ++j) word[j] = 0;
      return true;
    }
  }
  return false;
}

void LevelSetEnumerator::advance() {
  if (current_.suffix.empty() || !bump()) enter_branch(current_.branch + 1);
  ++position_;
}

void LevelSetEnumerator::seek(std::uint64_t target) {
  while (position_ < target) advance();
}

std::string kind_name(const SequenceFamily& family) {
  static constexpr const char* names[] = {"eventually_constant", "radial_ray", "horocyclic",
                                          "fixed_second",        "fixed_first", "custom"};
  return names[family.kind.index()];
}

std::vector<DLVertex> family_terms(const DLSpec& spec, const SequenceFamily& family, std::uint64_t begin,
                                   std::uint64_t end) {
  auto out = raw_terms(spec, family, begin, end);
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (!is_valid(spec, out[i])) {
      throw FamilyError("term " + std::to_string(begin + i) + " is not a vertex: " + to_string(out[i]));
    }
  }
  return out;
}

DLVertex family_term(const DLSpec& spec, const SequenceFamily& family, std::uint64_t n) {
  return family_terms(spec, family, n, n + 1).front();
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Converges:
      return "converges";
    case Verdict::NotConvergent:
      return "not_convergent";
    default:
      return "not_decided";
  }
}

LimitReport classify_hm(const DLSpec& spec, const SequenceFamily& family, const ClassifyOptions& options) {
  auto r = classify_structured(spec, family, options);
  fill_realizability(spec, r);
  return r;
}

std::optional<BoundaryFunction> busemann_limit(const DLSpec& spec, const SequenceFamily& family,
                                               const ClassifyOptions& options) {
  return classify_structured(spec, family, options).busemann_limit;
}

PointwiseReport empirical_pointwise_check(const DLSpec& spec, const SequenceFamily& family, std::uint64_t n0,
                                          std::uint64_t n1, std::int64_t radius,
                                          std::optional<BoundaryFunction> limit, std::size_t max_violations) {
  if (n1 <= n0) throw FamilyError("window needs n1 > n0");
  PointwiseReport report;
  report.n0 = n0;
  report.n1 = n1;
  report.radius = radius;
  if (!limit) {
    ClassifyOptions opt;
    opt.radius = radius;
    limit = busemann_limit(spec, family, opt);
  }
  report.limit = limit;

  const auto ball = dl_ball(spec, radius);
  const auto terms = family_terms(spec, family, n0, n1 + 1);
  auto table_of = [&](const DLVertex& x) {
    std::vector<std::int32_t> t;
    t.reserve(ball.size());
    for (const auto& y : ball) t.push_back(static_cast<std::int32_t>(dl_busemann_by_definition(x, y)));
    return t;
  };

  const auto first = table_of(terms.front());
  report.constant = true;
  for (std::size_t i = 1; i < terms.size(); ++i) {
    const auto t = table_of(terms[i]);
    std::size_t j = kernels::first_mismatch(t, first);
    if (j == t.size()) continue;
    report.constant = false;
    for (; j < t.size() && report.violations.size() < max_violations; ++j) {
      if (t[j] != first[j]) report.violations.push_back({ball[j], n0 + i, t[j], first[j]});
    }
  }

  if (limit) {
    const auto expected = value_table(*limit, ball);
    std::size_t j = kernels::first_mismatch(first, expected);
    report.matches_limit = report.constant && j == first.size();
    for (; j < first.size() && report.violations.size() < max_violations; ++j) {
      if (first[j] != expected[j]) report.violations.push_back({ball[j], n0, first[j], expected[j]});
    }
  }
  return report;
}

IsomorphismReport isomorphism_check(const std::vector<FamilyCase>& cases, std::int64_t radius,
                                    std::uint64_t window_length) {
  IsomorphismReport report;
  for (const auto& c : cases) {
    IsomorphismEntry e;
    e.label = c.label;
    bool errored = false;
    try {
      ClassifyOptions opt;
      opt.radius = radius;
      const auto cls = classify_hm(c.spec, c.family, opt);
      e.symbolic = cls.verdict;
      e.symbolic_limit = cls.busemann_limit;
      if (cls.heuristic_window && cls.verdict == Verdict::NotDecided) {
        e.n0 = cls.heuristic_window->first;
        e.n1 = std::max(cls.heuristic_window->second, e.n0 + window_length);
      } else {
        e.n0 = cls.stabilization_index.value_or(0);
        e.n1 = e.n0 + window_length;
      }
      const auto emp = empirical_pointwise_check(c.spec, c.family, e.n0, e.n1, radius, cls.busemann_limit);
      e.empirical_constant = emp.constant;
      switch (cls.verdict) {
        case Verdict::Converges:
          e.agree = emp.stabilized();
          if (!e.agree && !emp.violations.empty()) {
            const auto& v = emp.violations.front();
            e.detail = "at " + to_string(v.vertex) + " term " + std::to_string(v.index) + ": " +
                       std::to_string(v.value) + " vs " + std::to_string(v.expected);
          }
          break;
        case Verdict::NotConvergent:
          e.agree = !emp.constant;
          if (!e.agree) e.detail = "empirically constant on the window";
          break;
        case Verdict::NotDecided:
          e.detail = emp.constant ? "window constant" : "window not constant";
          break;
      }
    } catch (const Error& err) {
      errored = true;
      e.detail = err.what();
    }
    if (!errored && e.symbolic == Verdict::NotDecided) {
      ++report.undecided;
    } else if (e.agree) {
      ++report.agreed;
    } else {
      ++report.disagreed;
    }
    report.entries.push_back(std::move(e));
  }
  return report;
}

namespace {

bool in(FSet set, std::int64_t k) { return contains(set, k); }

std::string membership(std::int64_t k, const char* tree, bool ok) {
  return std::to_string(k) + (ok ? " in F(" : " not in F(") + tree + ")";
}

Realizability decide(const DLSpec& spec, const DLBoundaryPoint& p, bool literal) {
  const FSet f1 = f_set(spec.first);
  const FSet f2 = f_set(spec.second);
  return std::visit(
      overloaded{
          [&](const C1Point& c) -> Realizability {
            if (!c.ray.is_gamma()) return {true, "x1 marches along the ray with h1 -> +inf"};
            const bool ok = f1 == FSet::AllIntegers;
            return {ok, ok ? "gamma1 branches infinitely often" : "gamma1 branches finitely often"};
          },
          [&](const C2Point& c) -> Realizability {
            if (!c.ray.is_gamma()) return {true, "x2 marches along the ray with h1 -> -inf"};
            const bool ok = f2 == FSet::AllIntegers;
            return {ok, ok ? "gamma2 branches infinitely often" : "gamma2 branches finitely often"};
          },
          [&](const T1Point& t) -> Realizability {
            const std::int64_t h = height(t.vertex);
            const bool second = in(f2, -h);
            std::string reason = membership(-h, "T2", second);
            if (!literal) return {second, reason};
            const bool first = in(f1, h);
            return {first && second, membership(h, "T1", first) + ", " + reason};
          },
          [&](const T2Point& t) -> Realizability {
            const std::int64_t h = height(t.vertex);
            const bool first = in(f1, -h);
            std::string reason = membership(-h, "T1", first);
            if (!literal) return {first, reason};
            const bool second = in(f2, h);
            return {first && second, reason + ", " + membership(h, "T2", second)};
          },
          [&](const ZPoint& z) -> Realizability {
            const bool a = in(f1, z.level);
            const bool b = in(f2, -z.level);
            return {a && b, membership(z.level, "T1", a) + ", " + membership(-z.level, "T2", b)};
          },
      },
      p);
}

}  // namespace

Realizability realizability(const DLSpec& spec, const DLBoundaryPoint& p) { return decide(spec, p, false); }

Realizability realizability_literal(const DLSpec& spec, const DLBoundaryPoint& p) {
  return decide(spec, p, true);
}

}  // namespace horo
