#include "horo/horoproduct.hpp"

#include <algorithm>
#include <cassert>
#include <cstdlib>
#include <unordered_map>
#include <unordered_set>

#include "horo/error.hpp"
#include "horo/kernels/kernels.hpp"

namespace horo {

namespace {

void append_up(const DLSpec& spec, const DLVertex& v, std::vector<DLVertex>& out) {
  const VertexAddress down2 = gamma_ward(v.x2);
  for (auto& y1 : up_neighbors(spec.first, v.x1)) out.push_back({std::move(y1), down2});
}

void append_down(const DLSpec& spec, const DLVertex& v, std::vector<DLVertex>& out) {
  const VertexAddress down1 = gamma_ward(v.x1);
  for (auto& y2 : up_neighbors(spec.second, v.x2)) out.push_back({down1, std::move(y2)});
}

void append_neighbors(const DLSpec& spec, const DLVertex& v, std::vector<DLVertex>& out) {
  append_up(spec, v, out);
  append_down(spec, v, out);
}

void sort_layer(std::vector<DLVertex>& vertices, std::size_t begin) {
  std::vector<std::pair<std::string, std::size_t>> keys;
  keys.reserve(vertices.size() - begin);
  for (std::size_t i = begin; i < vertices.size(); ++i) {
    keys.emplace_back(to_string(vertices[i].x1) + '\x01' + to_string(vertices[i].x2), i);
  }
  std::sort(keys.begin(), keys.end());
  std::vector<DLVertex> sorted;
  sorted.reserve(keys.size());
  for (const auto& [key, i] : keys) sorted.push_back(std::move(vertices[i]));
  std::move(sorted.begin(), sorted.end(), vertices.begin() + static_cast<std::ptrdiff_t>(begin));
}

}  // namespace

std::string to_string(const DLVertex& v) { return to_string(v.x1) + "|" + to_string(v.x2); }

DLVertex parse_dl_vertex(std::string_view text) {
  if (text == "base") return base_vertex();
  const auto bar = text.find('|');
  if (bar == std::string_view::npos) {
    throw ParseError("DL vertex must be 'x1|x2': '" + std::string(text) + "'");
  }
  DLVertex v{parse_vertex(text.substr(0, bar)), parse_vertex(text.substr(bar + 1))};
  if (height(v.x1) + height(v.x2) != 0) throw HeightMismatch(height(v.x1), height(v.x2));
  return v;
}

std::size_t DLVertexHash::operator()(const DLVertex& v) const noexcept {
  const VertexAddressHash h;
  const std::size_t a = h(v.x1);
  return a ^ (h(v.x2) + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
}

bool text_less(const DLVertex& a, const DLVertex& b) {
  const auto a1 = to_string(a.x1);
  const auto b1 = to_string(b.x1);
  if (a1 != b1) return a1 < b1;
  return to_string(a.x2) < to_string(b.x2);
}

DLVertex make_vertex(const DLSpec& spec, VertexAddress x1, VertexAddress x2) {
  require_canonical(spec.first, x1);
  require_canonical(spec.second, x2);
  const auto h1 = height(x1);
  const auto h2 = height(x2);
  if (h1 + h2 != 0) throw HeightMismatch(h1, h2);
  return {std::move(x1), std::move(x2)};
}

bool is_valid(const DLSpec& spec, const DLVertex& v) {
  return is_canonical(spec.first, v.x1) && is_canonical(spec.second, v.x2) &&
         height(v.x1) + height(v.x2) == 0;
}

std::vector<DLVertex> dl_up_neighbors(const DLSpec& spec, const DLVertex& v) {
  std::vector<DLVertex> out;
  append_up(spec, v, out);
  return out;
}

std::vector<DLVertex> dl_down_neighbors(const DLSpec& spec, const DLVertex& v) {
  std::vector<DLVertex> out;
  append_down(spec, v, out);
  return out;
}

std::vector<DLVertex> dl_neighbors(const DLSpec& spec, const DLVertex& v) {
  std::vector<DLVertex> out;
  append_neighbors(spec, v, out);
  return out;
}

std::int64_t dl_dist(const DLVertex& v, const DLVertex& w) {
  return dist(v.x1, w.x1) + dist(v.x2, w.x2) - std::llabs(v.height() - w.height());
}

std::optional<std::int64_t> dl_dist_bfs(const DLSpec& spec, const DLVertex& v, const DLVertex& w,
                                        std::int64_t cap) {
  if (v == w) return 0;
  std::unordered_set<DLVertex, DLVertexHash> seen{v};
  std::vector<DLVertex> frontier{v};
  std::vector<DLVertex> next;
  std::vector<DLVertex> scratch;
  for (std::int64_t level = 1; level <= cap && !frontier.empty(); ++level) {
    next.clear();
    for (const auto& u : frontier) {
      scratch.clear();
      append_neighbors(spec, u, scratch);
      for (auto& y : scratch) {
        if (y == w) return level;
        if (seen.insert(y).second) next.push_back(std::move(y));
      }
    }
    frontier.swap(next);
  }
  return std::nullopt;
}

std::unordered_map<DLVertex, std::int64_t, DLVertexHash> dl_bfs_distances(const DLSpec& spec, const DLVertex& v,
                                                                          std::int64_t cap) {
  std::unordered_map<DLVertex, std::int64_t, DLVertexHash> dist{{v, 0}};
  std::vector<DLVertex> frontier{v};
  std::vector<DLVertex> next;
  std::vector<DLVertex> scratch;
  for (std::int64_t level = 1; level <= cap && !frontier.empty(); ++level) {
    next.clear();
    for (const auto& u : frontier) {
      scratch.clear();
      append_neighbors(spec, u, scratch);
      for (auto& y : scratch) {
        if (dist.emplace(y, level).second) next.push_back(std::move(y));
      }
    }
    frontier.swap(next);
  }
  return dist;
}

std::int64_t dl_busemann_point(const DLVertex& z, const DLVertex& y) {
  const std::int64_t hz = z.height();
  const std::int64_t value = busemann_point(z.x1, y.x1) + busemann_point(z.x2, y.x2) -
                             std::llabs(hz - y.height()) + std::llabs(hz);
  assert(value == dl_busemann_by_definition(z, y));
  return value;
}

std::int64_t dl_busemann_by_definition(const DLVertex& z, const DLVertex& y) {
  return dl_dist(z, y) - dl_dist(z, base_vertex());
}

std::vector<DLVertex> dl_ball(const DLSpec& spec, std::int64_t radius) {
  return build_ball_graph(spec, radius).vertices;
}

BallGraph build_ball_graph(const DLSpec& spec, std::int64_t radius) {
  BallGraph graph;
  if (radius < 0) {
    graph.layer_start = {0};
    graph.offsets = {0};
    return graph;
  }
  std::unordered_map<DLVertex, std::uint32_t, DLVertexHash> ids;
  graph.vertices.push_back(base_vertex());
  ids.emplace(base_vertex(), 0);
  graph.layer_start.push_back(0);
  std::vector<DLVertex> scratch;
  std::size_t layer_begin = 0;
  for (std::int64_t r = 1; r <= radius; ++r) {
    const std::size_t layer_end = graph.vertices.size();
    graph.layer_start.push_back(static_cast<std::uint32_t>(layer_end));
    for (std::size_t i = layer_begin; i < layer_end; ++i) {
      scratch.clear();
      append_neighbors(spec, graph.vertices[i], scratch);
      for (auto& y : scratch) {
        if (ids.count(y)) continue;
        ids.emplace(y, 0);
        graph.vertices.push_back(std::move(y));
      }
    }
    sort_layer(graph.vertices, layer_end);
    for (std::size_t i = layer_end; i < graph.vertices.size(); ++i) {
      ids[graph.vertices[i]] = static_cast<std::uint32_t>(i);
    }
    layer_begin = layer_end;
  }
  graph.layer_start.push_back(static_cast<std::uint32_t>(graph.vertices.size()));

  graph.offsets.reserve(graph.vertices.size() + 1);
  graph.offsets.push_back(0);
  for (const auto& v : graph.vertices) {
    scratch.clear();
    append_neighbors(spec, v, scratch);
    for (const auto& y : scratch) {
      if (auto it = ids.find(y); it != ids.end()) graph.targets.push_back(it->second);
    }
    graph.offsets.push_back(static_cast<std::uint32_t>(graph.targets.size()));
  }
  return graph;
}

std::vector<std::int32_t> all_pairs_bfs(const BallGraph& graph, std::size_t count) {
  const std::size_t n = graph.size();
  count = std::min(count, n);
  std::vector<std::int32_t> distances(count * count, -1);
  if (count == 0) return distances;

  const kernels::CsrView csr{graph.offsets, graph.targets};
  constexpr std::size_t kMaxWords = 4;
  const std::size_t words = std::min(kMaxWords, (count + 63) / 64);
  const std::size_t batch = words * 64;
  std::vector<std::uint64_t> frontier(n * words);
  std::vector<std::uint64_t> visited(n * words);
  std::vector<std::uint64_t> next(n * words);

  for (std::size_t first = 0; first < count; first += batch) {
    const std::size_t sources = std::min(batch, count - first);
    std::fill(frontier.begin(), frontier.end(), 0);
    for (std::size_t s = 0; s < sources; ++s) {
      frontier[(first + s) * words + s / 64] |= std::uint64_t{1} << (s % 64);
      distances[(first + s) * count + first + s] = 0;
    }
    visited = frontier;
    for (std::int32_t level = 1; kernels::bfs_expand(csr, frontier, visited, next, words); ++level) {
      for (std::size_t t = 0; t < count; ++t) {
        for (std::size_t w = 0; w < words; ++w) {
          std::uint64_t bits = next[t * words + w];
          while (bits) {
            const auto bit = static_cast<std::size_t>(__builtin_ctzll(bits));
            bits &= bits - 1;
            distances[(first + w * 64 + bit) * count + t] = level;
          }
        }
      }
      frontier.swap(next);
    }
  }
  return distances;
}

}  // namespace horo
