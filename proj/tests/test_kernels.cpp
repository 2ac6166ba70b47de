#include <limits>
#include <random>
#include <vector>

#include "doctest.h"

#include "horo/kernels/kernels.hpp"

using namespace horo::kernels;

namespace {

std::vector<std::int32_t> random_ints(std::mt19937& g, std::size_t n, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  std::vector<std::int32_t> v(n);
  for (auto& x : v) x = d(g);
  return v;
}

}  // namespace

TEST_CASE("dispatch") {
  force_isa(Isa::Scalar);
  CHECK(active_isa() == Isa::Scalar);
  force_isa(std::nullopt);
  CHECK(active_isa() == detected_isa());
  CHECK((to_string(Isa::Avx2) == "avx2"));
}

TEST_CASE("first_mismatch: scalar and avx2 agree") {
  if (!avx2::available()) return;
  std::mt19937 g(1);
  for (std::size_t n : {0, 1, 7, 8, 9, 31, 64, 65, 1000}) {
    auto a = random_ints(g, n, -5, 5);
    auto b = a;
    CHECK(scalar::first_mismatch(a, b) == n);
    CHECK(avx2::first_mismatch(a, b) == n);
    for (std::size_t i = 0; i < n; i += 3) {
      auto c = a;
      c[i] += 1;
      CHECK(scalar::first_mismatch(a, c) == i);
      CHECK(avx2::first_mismatch(a, c) == i);
      if (i + 1 < n) c[n - 1] -= 7;
      CHECK(avx2::first_mismatch(a, c) == scalar::first_mismatch(a, c));
    }
  }
}

TEST_CASE("lipschitz_excess: scalar and avx2 agree") {
  CHECK(scalar::lipschitz_excess(0, {}, {}) == std::numeric_limits<std::int32_t>::min());
  if (!avx2::available()) return;
  CHECK(avx2::lipschitz_excess(0, {}, {}) == std::numeric_limits<std::int32_t>::min());
  std::mt19937 g(2);
  for (std::size_t n : {1, 3, 8, 15, 16, 17, 100, 1001}) {
    for (int rep = 0; rep < 20; ++rep) {
      const auto values = random_ints(g, n, -40, 40);
      const auto dist = random_ints(g, n, 0, 60);
      const std::int32_t v = random_ints(g, 1, -40, 40)[0];
      CHECK(scalar::lipschitz_excess(v, values, dist) == avx2::lipschitz_excess(v, values, dist));
    }
  }
  const std::vector<std::int32_t> values{0, 1, 5}, dist{0, 1, 2};
  CHECK(scalar::lipschitz_excess(0, values, dist) == 3);
}

TEST_CASE("bfs_expand: scalar and avx2 agree on random graphs") {
  if (!avx2::available()) return;
  std::mt19937 g(3);
  for (std::size_t vertices : {1, 5, 40, 300}) {
    for (std::size_t words : {1, 2, 3, 4, 5, 9}) {
      std::vector<std::uint32_t> offsets{0}, targets;
      std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(vertices - 1));
      for (std::size_t v = 0; v < vertices; ++v) {
        const int deg = static_cast<int>(g() % 6);
        for (int k = 0; k < deg; ++k) targets.push_back(pick(g));
        offsets.push_back(static_cast<std::uint32_t>(targets.size()));
      }
      const CsrView view{offsets, targets};
      std::vector<std::uint64_t> frontier(vertices * words), visited(vertices * words);
      for (auto& x : frontier) x = (static_cast<std::uint64_t>(g()) << 32 | g()) & (static_cast<std::uint64_t>(g()) << 32 | g());
      for (auto& x : visited) x = static_cast<std::uint64_t>(g()) << 32 | g();
      auto vis_a = visited, vis_b = visited;
      std::vector<std::uint64_t> next_a(vertices * words, 1), next_b(vertices * words, 2);
      const bool ra = scalar::bfs_expand(view, frontier, vis_a, next_a, words);
      const bool rb = avx2::bfs_expand(view, frontier, vis_b, next_b, words);
      CHECK(ra == rb);
      CHECK(vis_a == vis_b);
      CHECK(next_a == next_b);
    }
  }
}
