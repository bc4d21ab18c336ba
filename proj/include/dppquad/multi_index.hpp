#ifndef DPPQUAD_MULTI_INDEX_HPP_
#define DPPQUAD_MULTI_INDEX_HPP_

#include <cstdint>
#include <vector>

namespace dppquad {

/// Per-dimension polynomial degrees (k^1, ..., k^d).
using MultiIndex = std::vector<std::uint32_t>;

/// Rank -> multi-index under the max-degree-then-lexicographic order:
/// indices are grouped in blocks of constant maximum degree m (block m
/// spans ranks [m^d, (m+1)^d - 1]) and sorted lexicographically within
/// a block. rank 0 is the all-zeros index.
MultiIndex rank_to_multiindex(std::uint64_t rank, int d);

/// Inverse of rank_to_multiindex.
std::uint64_t multiindex_to_rank(const MultiIndex& k);

/// First n multi-indices in order, i.e. {rank_to_multiindex(i, d)}_{i<n}.
std::vector<MultiIndex> ordering_table(std::uint64_t n, int d);

}  // namespace dppquad

#endif  // DPPQUAD_MULTI_INDEX_HPP_
