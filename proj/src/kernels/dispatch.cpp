#include <atomic>

#include "horo/kernels/kernels.hpp"

namespace horo::kernels {

namespace {

// -1: follow detection; otherwise a forced Isa value.
std::atomic<int> g_forced{-1};

}  // namespace

std::string to_string(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

Isa detected_isa() {
  static const Isa isa = avx2::available() ? Isa::Avx2 : Isa::Scalar;
  return isa;
}

Isa active_isa() {
  const int forced = g_forced.load(std::memory_order_relaxed);
  if (forced < 0) return detected_isa();
  const auto isa = static_cast<Isa>(forced);
  return (isa == Isa::Avx2 && detected_isa() != Isa::Avx2) ? Isa::Scalar : isa;
}

void force_isa(std::optional<Isa> isa) {
  g_forced.store(isa ? static_cast<int>(*isa) : -1, std::memory_order_relaxed);
}

bool bfs_expand(CsrView graph, std::span<const std::uint64_t> frontier,
                std::span<std::uint64_t> visited, std::span<std::uint64_t> next, std::size_t words) {
  if (active_isa() == Isa::Avx2) return avx2::bfs_expand(graph, frontier, visited, next, words);
  return scalar::bfs_expand(graph, frontier, visited, next, words);
}

std::size_t first_mismatch(std::span<const std::int32_t> a, std::span<const std::int32_t> b) {
  if (active_isa() == Isa::Avx2) return avx2::first_mismatch(a, b);
  return scalar::first_mismatch(a, b);
}

std::int32_t lipschitz_excess(std::int32_t value, std::span<const std::int32_t> values,
                              std::span<const std::int32_t> distances) {
  if (active_isa() == Isa::Avx2) return avx2::lipschitz_excess(value, values, distances);
  return scalar::lipschitz_excess(value, values, distances);
}

}  // namespace horo::kernels
