#include "horo/dl_boundary.hpp"

#include <charconv>
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

bool is_gamma(const TreePoint& p) {
  const auto* ray = std::get_if<RayAddress>(&p);
  return ray && ray->is_gamma();
}

}  // namespace

std::string to_string(const DLBoundaryPoint& p) {
  return std::visit(overloaded{
                        [](const C1Point& c) { return "C1:" + to_string(c.ray); },
                        [](const C2Point& c) { return "C2:" + to_string(c.ray); },
                        [](const T1Point& t) { return "T1:" + to_string(t.vertex); },
                        [](const T2Point& t) { return "T2:" + to_string(t.vertex); },
                        [](const ZPoint& z) { return "Z:" + std::to_string(z.level); },
                    },
                    p);
}

DLBoundaryPoint parse_boundary_point(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw ParseError("boundary point needs a 'C1:', 'C2:', 'T1:', 'T2:' or 'Z:' tag: '" +
                     std::string(text) + "'");
  }
  const auto tag = text.substr(0, colon);
  const auto body = text.substr(colon + 1);
  if (tag == "C1") return C1Point{parse_ray(body)};
  if (tag == "C2") return C2Point{parse_ray(body)};
  if (tag == "T1") return T1Point{parse_vertex(body)};
  if (tag == "T2") return T2Point{parse_vertex(body)};
  if (tag == "Z") {
    std::int64_t k = 0;
    auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), k);
    if (body.empty() || ec != std::errc{} || ptr != body.data() + body.size()) {
      throw ParseError("invalid level in '" + std::string(text) + "'");
    }
    return ZPoint{k};
  }
  throw ParseError("unknown boundary tag '" + std::string(tag) + "'");
}

std::string to_string(const BoundaryFunction& f) {
  if (const auto* interior = std::get_if<InteriorPoint>(&f)) return "I:" + to_string(interior->vertex);
  return std::visit(overloaded{
                        [](const InteriorPoint&) { return std::string(); },
                        [](const auto& p) { return to_string(DLBoundaryPoint{p}); },
                    },
                    f);
}

BoundaryFunction parse_boundary_function(std::string_view text) {
  if (text.substr(0, 2) == "I:") return InteriorPoint{parse_dl_vertex(text.substr(2))};
  return theta(parse_boundary_point(text));
}

std::int64_t eval(const BoundaryFunction& f, const DLVertex& y) {
  return std::visit(overloaded{
                        [&](const InteriorPoint& z) { return dl_busemann_point(z.vertex, y); },
                        [&](const C1Point& c) { return busemann_ray(c.ray, y.x1); },
                        [&](const C2Point& c) { return busemann_ray(c.ray, y.x2); },
                        [&](const T1Point& t) {
                          return busemann_point(t.vertex, y.x1) + height(y.x2) +
                                 c_k(height(t.vertex), y.x1);
                        },
                        [&](const T2Point& t) -> std::int64_t {
                          const std::int64_t level = height(t.vertex);
                          return height(y.x1) + busemann_point(t.vertex, y.x2) + std::llabs(level) -
                                 std::llabs(level - height(y.x2));
                        },
                        [&](const ZPoint& z) { return c_k(z.level, y.x1); },
                    },
                    f);
}

std::string to_string(const ExtendedInt& e) {
  switch (e.kind) {
    case ExtendedInt::Kind::PlusInfinity:
      return "+inf";
    case ExtendedInt::Kind::MinusInfinity:
      return "-inf";
    default:
      return std::to_string(e.value);
  }
}

std::string to_string(const TreePoint& p) {
  return std::visit([](const auto& x) { return to_string(x); }, p);
}

HMCoordinates hm_coordinates(const DLBoundaryPoint& p) {
  const TreePoint gamma = RayAddress::gamma();
  return std::visit(
      overloaded{
          [&](const C1Point& c) { return HMCoordinates{c.ray, gamma, ExtendedInt::plus_infinity()}; },
          [&](const C2Point& c) { return HMCoordinates{gamma, c.ray, ExtendedInt::minus_infinity()}; },
          [&](const T1Point& t) {
            return HMCoordinates{t.vertex, gamma, ExtendedInt::finite(height(t.vertex))};
          },
          [&](const T2Point& t) {
            return HMCoordinates{gamma, t.vertex, ExtendedInt::finite(-height(t.vertex))};
          },
          [&](const ZPoint& z) { return HMCoordinates{gamma, gamma, ExtendedInt::finite(z.level)}; },
      },
      p);
}

std::optional<DLBoundaryPoint> boundary_point_from_hm(const HMCoordinates& c) {
  const auto* ray1 = std::get_if<RayAddress>(&c.first);
  const auto* ray2 = std::get_if<RayAddress>(&c.second);
  const auto* v1 = std::get_if<VertexAddress>(&c.first);
  const auto* v2 = std::get_if<VertexAddress>(&c.second);
  switch (c.height.kind) {
    case ExtendedInt::Kind::PlusInfinity:
      if (ray1 && is_gamma(c.second)) return C1Point{*ray1};
      return std::nullopt;
    case ExtendedInt::Kind::MinusInfinity:
      if (ray2 && is_gamma(c.first)) return C2Point{*ray2};
      return std::nullopt;
    case ExtendedInt::Kind::Finite:
      break;
  }
  const std::int64_t k = c.height.value;
  if (v1 && is_gamma(c.second) && height(*v1) == k) return T1Point{*v1};
  if (v2 && is_gamma(c.first) && -height(*v2) == k) return T2Point{*v2};
  if (is_gamma(c.first) && is_gamma(c.second)) return ZPoint{k};
  return std::nullopt;
}

BoundaryFunction theta(const DLBoundaryPoint& p) {
  return std::visit([](const auto& x) -> BoundaryFunction { return x; }, p);
}

bool is_valid(const DLSpec& spec, const BoundaryFunction& f) {
  return std::visit(overloaded{
                        [&](const InteriorPoint& z) { return is_valid(spec, z.vertex); },
                        [&](const C1Point& c) { return is_valid_ray(spec.first, c.ray); },
                        [&](const C2Point& c) { return is_valid_ray(spec.second, c.ray); },
                        [&](const T1Point& t) { return is_canonical(spec.first, t.vertex); },
                        [&](const T2Point& t) { return is_canonical(spec.second, t.vertex); },
                        [](const ZPoint&) { return true; },
                    },
                    f);
}

std::vector<std::int32_t> value_table(const BoundaryFunction& f, const std::vector<DLVertex>& vertices) {
  std::vector<std::int32_t> table;
  table.reserve(vertices.size());
  for (const auto& y : vertices) table.push_back(static_cast<std::int32_t>(eval(f, y)));
  return table;
}

LimitCheckReport boundary_limit_check(const DLSpec& spec, const std::vector<BoundaryFunction>& seq,
                                      const BoundaryFunction& target, std::int64_t test_ball_radius) {
  LimitCheckReport report;
  const auto ball = dl_ball(spec, test_ball_radius);
  const auto expected = value_table(target, ball);
  std::vector<std::vector<std::int32_t>> tables;
  tables.reserve(seq.size());
  for (const auto& f : seq) tables.push_back(value_table(f, ball));

  report.entries.reserve(ball.size());
  for (std::size_t j = 0; j < ball.size(); ++j) {
    std::size_t from = seq.size();
    while (from > 0 && tables[from - 1][j] == expected[j]) --from;
    report.entries.push_back({ball[j], from});
    report.stabilization_index = std::max(report.stabilization_index, from);
  }

  if (seq.empty()) return report;
  const auto& last = tables.back();
  const std::size_t bad = kernels::first_mismatch(last, expected);
  report.stabilized = bad == last.size();
  if (!report.stabilized) {
    report.witness = LimitCheckReport::Witness{ball[bad], seq.size() - 1, last[bad], expected[bad]};
  }
  return report;
}

}  // namespace horo
