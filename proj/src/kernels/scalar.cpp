#include <algorithm>
#include <climits>
#include <cstdlib>

#include "horo/kernels/kernels.hpp"

namespace horo::kernels::scalar {

bool bfs_expand(CsrView graph, std::span<const std::uint64_t> frontier,
                std::span<std::uint64_t> visited, std::span<std::uint64_t> next, std::size_t words) {
  bool any = false;
  const std::size_t n = graph.vertex_count();
  for (std::size_t v = 0; v < n; ++v) {
    const std::uint32_t begin = graph.offsets[v];
    const std::uint32_t end = graph.offsets[v + 1];
    for (std::size_t w = 0; w < words; ++w) {
      std::uint64_t acc = 0;
      for (std::uint32_t e = begin; e < end; ++e) acc |= frontier[graph.targets[e] * words + w];
      const std::uint64_t fresh = acc & ~visited[v * words + w];
      next[v * words + w] = fresh;
      visited[v * words + w] |= fresh;
      any |= fresh != 0;
    }
  }
  return any;
}

std::size_t first_mismatch(std::span<const std::int32_t> a, std::span<const std::int32_t> b) {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] != b[i]) return i;
  }
  return n;
}

std::int32_t lipschitz_excess(std::int32_t value, std::span<const std::int32_t> values,
                              std::span<const std::int32_t> distances) {
  std::int32_t worst = INT32_MIN;
  const std::size_t n = std::min(values.size(), distances.size());
  for (std::size_t j = 0; j < n; ++j) {
    worst = std::max(worst, std::abs(value - values[j]) - distances[j]);
  }
  return worst;
}

}  // namespace horo::kernels::scalar
