#include <algorithm>
#include <climits>
#include <cstdlib>

#include "horo/kernels/kernels.hpp"

#if defined(__x86_64__) && defined(__AVX2__)
#include <immintrin.h>
#define HORO_HAVE_AVX2 1
#endif

namespace horo::kernels::avx2 {

#if HORO_HAVE_AVX2

bool available() { return __builtin_cpu_supports("avx2"); }

bool bfs_expand(CsrView graph, std::span<const std::uint64_t> frontier,
                std::span<std::uint64_t> visited, std::span<std::uint64_t> next, std::size_t words) {
  const std::size_t n = graph.vertex_count();
  const std::size_t wide = words / 4 * 4;
  const std::uint64_t* f = frontier.data();
  __m256i any_vec = _mm256_setzero_si256();
  std::uint64_t any_tail = 0;
  for (std::size_t v = 0; v < n; ++v) {
    const std::uint32_t begin = graph.offsets[v];
    const std::uint32_t end = graph.offsets[v + 1];
    std::uint64_t* vis = visited.data() + v * words;
    std::uint64_t* out = next.data() + v * words;
    for (std::size_t w = 0; w < wide; w += 4) {
      __m256i acc = _mm256_setzero_si256();
      for (std::uint32_t e = begin; e < end; ++e) {
        const auto* src = reinterpret_cast<const __m256i*>(f + graph.targets[e] * words + w);
        acc = _mm256_or_si256(acc, _mm256_loadu_si256(src));
      }
      const __m256i seen = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(vis + w));
      const __m256i fresh = _mm256_andnot_si256(seen, acc);
      _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + w), fresh);
      _mm256_storeu_si256(reinterpret_cast<__m256i*>(vis + w), _mm256_or_si256(seen, fresh));
      any_vec = _mm256_or_si256(any_vec, fresh);
    }
    for (std::size_t w = wide; w < words; ++w) {
      std::uint64_t acc = 0;
      for (std::uint32_t e = begin; e < end; ++e) acc |= f[graph.targets[e] * words + w];
      const std::uint64_t fresh = acc & ~vis[w];
      out[w] = fresh;
      vis[w] |= fresh;
      any_tail |= fresh;
    }
  }
  return !_mm256_testz_si256(any_vec, any_vec) || any_tail != 0;
}

std::size_t first_mismatch(std::span<const std::int32_t> a, std::span<const std::int32_t> b) {
  const std::size_t n = std::min(a.size(), b.size());
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a.data() + i));
    const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b.data() + i));
    const auto eq = static_cast<unsigned>(_mm256_movemask_ps(_mm256_castsi256_ps(_mm256_cmpeq_epi32(va, vb))));
    if (eq != 0xFFu) return i + static_cast<std::size_t>(__builtin_ctz(~eq & 0xFFu));
  }
  for (; i < n; ++i) {
    if (a[i] != b[i]) return i;
  }
  return n;
}

std::int32_t lipschitz_excess(std::int32_t value, std::span<const std::int32_t> values,
                              std::span<const std::int32_t> distances) {
  const std::size_t n = std::min(values.size(), distances.size());
  const __m256i pivot = _mm256_set1_epi32(value);
  __m256i worst_vec = _mm256_set1_epi32(INT32_MIN);
  std::size_t j = 0;
  for (; j + 8 <= n; j += 8) {
    const __m256i vals = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(values.data() + j));
    const __m256i dist = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(distances.data() + j));
    const __m256i excess = _mm256_sub_epi32(_mm256_abs_epi32(_mm256_sub_epi32(pivot, vals)), dist);
    worst_vec = _mm256_max_epi32(worst_vec, excess);
  }
  alignas(32) std::int32_t lanes[8];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), worst_vec);
  std::int32_t worst = *std::max_element(lanes, lanes + 8);
  for (; j < n; ++j) worst = std::max(worst, std::abs(value - values[j]) - distances[j]);
  return worst;
}

#else

bool available() { return false; }

bool bfs_expand(CsrView graph, std::span<const std::uint64_t> frontier,
                std::span<std::uint64_t> visited, std::span<std::uint64_t> next, std::size_t words) {
  return scalar::bfs_expand(graph, frontier, visited, next, words);
}

std::size_t first_mismatch(std::span<const std::int32_t> a, std::span<const std::int32_t> b) {
  return scalar::first_mismatch(a, b);
}

std::int32_t lipschitz_excess(std::int32_t value, std::span<const std::int32_t> values,
                              std::span<const std::int32_t> distances) {
  return scalar::lipschitz_excess(value, values, distances);
}

#endif

}  // namespace horo::kernels::avx2
