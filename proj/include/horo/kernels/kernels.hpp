#pragma once

// Data-parallel inner loops. Each kernel has a scalar reference in
// horo::kernels::scalar and an AVX2 variant in horo::kernels::avx2; the
// unqualified entry points dispatch at runtime on the detected ISA.
// Variants must agree bit for bit.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>

namespace horo::kernels {

enum class Isa { Scalar, Avx2 };

std::string to_string(Isa isa);

/// Best ISA supported by the running CPU.
Isa detected_isa();
/// ISA used by the dispatching entry points (detected unless forced).
Isa active_isa();
/// Force an ISA (clamped to what the CPU supports); nullopt restores detection.
void force_isa(std::optional<Isa> isa);

/// Compressed adjacency: neighbors of v are targets[offsets[v] .. offsets[v+1]).
struct CsrView {
  std::span<const std::uint32_t> offsets;
  std::span<const std::uint32_t> targets;

  std::size_t vertex_count() const noexcept { return offsets.empty() ? 0 : offsets.size() - 1; }
};

/// One level of bit-parallel breadth-first search. Every vertex owns `words`
/// consecutive 64-bit lanes, one bit per BFS source.
///   next[v]     = (OR over neighbors u of frontier[u]) & ~visited[v]
///   visited[v] |= next[v]
/// Returns true if any bit was set in next.
bool bfs_expand(CsrView graph, std::span<const std::uint64_t> frontier,
                std::span<std::uint64_t> visited, std::span<std::uint64_t> next, std::size_t words);

/// Index of the first i with a[i] != b[i]; a.size() if none. Requires equal sizes.
std::size_t first_mismatch(std::span<const std::int32_t> a, std::span<const std::int32_t> b);

/// max_j (|value - values[j]| - distances[j]); INT32_MIN for empty input.
/// A function is 1-Lipschitz on the row iff the result is <= 0.
std::int32_t lipschitz_excess(std::int32_t value, std::span<const std::int32_t> values,
                              std::span<const std::int32_t> distances);

namespace scalar {
bool bfs_expand(CsrView graph, std::span<const std::uint64_t> frontier,
                std::span<std::uint64_t> visited, std::span<std::uint64_t> next, std::size_t words);
std::size_t first_mismatch(std::span<const std::int32_t> a, std::span<const std::int32_t> b);
std::int32_t lipschitz_excess(std::int32_t value, std::span<const std::int32_t> values,
                              std::span<const std::int32_t> distances);
}  // namespace scalar

namespace avx2 {
/// Compiled in and supported by this CPU.
bool available();
bool bfs_expand(CsrView graph, std::span<const std::uint64_t> frontier,
                std::span<std::uint64_t> visited, std::span<std::uint64_t> next, std::size_t words);
std::size_t first_mismatch(std::span<const std::int32_t> a, std::span<const std::int32_t> b);
std::int32_t lipschitz_excess(std::int32_t value, std::span<const std::int32_t> values,
                              std::span<const std::int32_t> distances);
}  // namespace avx2

}  // namespace horo::kernels
