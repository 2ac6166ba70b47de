#pragma once

// The horospheric product T1 (up-down) T2: pairs (x1, x2) with
// height1(x1) + height2(x2) = 0, adjacent when both coordinates are adjacent.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "horo/tree.hpp"

namespace horo {

struct DLSpec {
  TreeSpec first;
  TreeSpec second;
};

struct DLVertex {
  VertexAddress x1;
  VertexAddress x2;

  /// The DL height h1(x1).
  std::int64_t height() const noexcept { return horo::height(x1); }

  friend bool operator==(const DLVertex&, const DLVertex&) = default;
};

inline DLVertex base_vertex() { return {}; }

/// "x1|x2", e.g. "0;0|1;".
std::string to_string(const DLVertex& v);
/// Accepts "x1|x2" and the keyword "base". Throws HeightMismatch if h1 + h2 != 0.
DLVertex parse_dl_vertex(std::string_view text);

struct DLVertexHash {
  std::size_t operator()(const DLVertex& v) const noexcept;
};

/// Lexicographic on (textual x1, textual x2).
bool text_less(const DLVertex& a, const DLVertex& b);

/// Throws AddressError for non-canonical coordinates, HeightMismatch when the
/// heights do not cancel.
DLVertex make_vertex(const DLSpec& spec, VertexAddress x1, VertexAddress x2);

/// Checks canonical coordinates and cancelling heights.
bool is_valid(const DLSpec& spec, const DLVertex& v);

/// Up moves (height + 1) pair each up-neighbor of x1 with gamma_ward(x2);
/// down moves pair gamma_ward(x1) with each up-neighbor of x2.
std::vector<DLVertex> dl_up_neighbors(const DLSpec& spec, const DLVertex& v);
std::vector<DLVertex> dl_down_neighbors(const DLSpec& spec, const DLVertex& v);
/// Up moves first, then down moves. Size deg1(x1) + deg2(x2) - 2.
std::vector<DLVertex> dl_neighbors(const DLSpec& spec, const DLVertex& v);

/// d1(x1, y1) + d2(x2, y2) - |h1(x1) - h1(y1)|.
std::int64_t dl_dist(const DLVertex& v, const DLVertex& w);

/// Breadth-first distance using only dl_neighbors; nullopt if it exceeds cap.
std::optional<std::int64_t> dl_dist_bfs(const DLSpec& spec, const DLVertex& v, const DLVertex& w,
                                        std::int64_t cap);

/// Plain single-source BFS: every vertex within cap of v with its distance.
std::unordered_map<DLVertex, std::int64_t, DLVertexHash> dl_bfs_distances(const DLSpec& spec, const DLVertex& v,
                                                                          std::int64_t cap);

/// b_z(y) via the product identity
///   b_{z1}(y1) + b_{z2}(y2) - |h1(z1) - h1(y1)| + |h1(z1)|.
/// Debug builds also check it against dl_dist(z, y) - dl_dist(z, base).
std::int64_t dl_busemann_point(const DLVertex& z, const DLVertex& y);

/// b_z(y) straight from the definition d(z, y) - d(z, o).
std::int64_t dl_busemann_by_definition(const DLVertex& z, const DLVertex& y);

/// The ball of the given radius around the base point, generated breadth-first.
/// Layers are in increasing distance; each layer is sorted by text_less.
std::vector<DLVertex> dl_ball(const DLSpec& spec, std::int64_t radius);

/// A ball materialized as an integer graph: vertex ids follow dl_ball order and
/// adjacency is restricted to the ball.
struct BallGraph {
  std::vector<DLVertex> vertices;
  /// layer_start[r] = first id at distance r; layer_start[radius + 1] = size.
  std::vector<std::uint32_t> layer_start;
  std::vector<std::uint32_t> offsets;
  std::vector<std::uint32_t> targets;

  std::size_t size() const noexcept { return vertices.size(); }
  std::size_t ball_size(std::int64_t r) const { return layer_start.at(static_cast<std::size_t>(r) + 1); }
};

BallGraph build_ball_graph(const DLSpec& spec, std::int64_t radius);

/// Graph distances between every pair of the first `count` vertices of the graph,
/// row-major count x count, computed by bit-parallel BFS restricted to the graph.
/// Entries that the graph cannot connect are -1.
///
/// Geodesics between points of ball(r) stay inside ball(2r), so a graph of radius
/// 2r yields exact distances for the ball(r) prefix.
std::vector<std::int32_t> all_pairs_bfs(const BallGraph& graph, std::size_t count);

}  // namespace horo
