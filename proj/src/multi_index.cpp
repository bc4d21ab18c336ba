#include "dppquad/multi_index.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dppquad {

namespace {

std::uint64_t ipow(std::uint64_t base, int exp) {
  std::uint64_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

// Largest m with m^d <= rank, i.e. the max degree of the block holding rank.
std::uint64_t block_of_rank(std::uint64_t rank, int d) {
  if (d == 1) return rank;
  auto m = static_cast<std::uint64_t>(std::floor(std::pow(
      static_cast<double>(rank), 1.0 / d)));
  while (ipow(m + 1, d) <= rank) ++m;
  while (m > 0 && ipow(m, d) > rank) --m;
  return m;
}

// Number of suffixes of given length with entries in {0..m}, containing at
// least one m if required.
std::uint64_t suffix_count(std::uint64_t m, int length, bool need_max) {
  const std::uint64_t all = ipow(m + 1, length);
  return need_max ? all - ipow(m, length) : all;
}

}  // namespace

MultiIndex rank_to_multiindex(std::uint64_t rank, int d) {
  if (d < 1) throw std::invalid_argument("rank_to_multiindex: d must be >= 1");
  const std::uint64_t m = block_of_rank(rank, d);
  std::uint64_t offset = rank - ipow(m, d);

  MultiIndex k(d, 0);
  bool seen_max = false;
  for (int i = 0; i < d; ++i) {
    const int remaining = d - i - 1;
    for (std::uint64_t v = 0; v <= m; ++v) {
      const bool max_here = seen_max || v == m;
      // Last coordinate must itself realize the max if none did before.
      if (remaining == 0 && !max_here) continue;
      const std::uint64_t c =
          remaining == 0 ? 1 : suffix_count(m, remaining, !max_here);
      if (offset < c) {
        k[i] = static_cast<std::uint32_t>(v);
        seen_max = max_here;
        break;
      }
      offset -= c;
    }
  }
  return k;
}

std::uint64_t multiindex_to_rank(const MultiIndex& k) {
  const int d = static_cast<int>(k.size());
  if (d < 1) throw std::invalid_argument("multiindex_to_rank: empty index");
  const std::uint64_t m = *std::max_element(k.begin(), k.end());

  std::uint64_t rank = ipow(m, d);
  bool seen_max = false;
  for (int i = 0; i < d; ++i) {
    const int remaining = d - i - 1;
    for (std::uint64_t v = 0; v < k[i]; ++v) {
      const bool max_here = seen_max || v == m;
      if (remaining == 0 && !max_here) continue;
      rank += remaining == 0 ? 1 : suffix_count(m, remaining, !max_here);
    }
    seen_max = seen_max || k[i] == m;
  }
  return rank;
}

std::vector<MultiIndex> ordering_table(std::uint64_t n, int d) {
  std::vector<MultiIndex> table;
  table.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) table.push_back(rank_to_multiindex(i, d));
  return table;
}

}  // namespace dppquad
