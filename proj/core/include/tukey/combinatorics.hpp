#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace tukey {

/// Binomial coefficient C(n, r); 0 when r < 0 or r > n. Saturates at
/// UINT64_MAX instead of overflowing.
std::uint64_t binomial(int n, int r);

/// Colexicographic rank of a strictly increasing index tuple:
/// sum_j C(idx[j], j + 1). Bijective onto [0, C(n, r)).
std::uint64_t colex_rank(std::span<const int> sorted);

/// Inverse of colex_rank for tuples of size r.
std::vector<int> colex_unrank(std::uint64_t rank, int r);

/// Visits every r-subset of {0, ..., n-1} in lexicographic order. The
/// callback receives a strictly increasing span and returns false to stop.
template <class Fn>
void for_each_combination(int n, int r, Fn&& fn) {
  if (r < 0 || r > n) return;
  std::vector<int> c(static_cast<std::size_t>(r));
  for (int i = 0; i < r; ++i) c[i] = i;
  while (true) {
    if (!fn(std::span<const int>(c))) return;
    int i = r - 1;
    while (i >= 0 && c[i] == n - r + i) --i;
    if (i < 0) return;
    ++c[i];
    for (int j = i + 1; j < r; ++j) c[j] = c[j - 1] + 1;
  }
}

/// Visits every r-subset of the given (sorted) pool, lexicographically.
template <class Fn>
void for_each_subset(std::span<const int> pool, int r, Fn&& fn) {
  std::vector<int> picked(static_cast<std::size_t>(r));
  for_each_combination(static_cast<int>(pool.size()), r,
                       [&](std::span<const int> pos) {
                         for (int i = 0; i < r; ++i) picked[i] = pool[pos[i]];
                         return fn(std::span<const int>(picked));
                       });
}

/// Tuple with `index` inserted at its sorted position. Precondition:
/// `index` is not already present.
std::vector<int> insert_sorted(std::span<const int> sorted, int index);

/// Tuple with the element at position `pos` removed.
std::vector<int> erase_at(std::span<const int> sorted, std::size_t pos);

/// Number of common elements of two sorted tuples.
int shared_count(std::span<const int> a, std::span<const int> b);

/// "3-7-11" style identifier used by the exporters and file formats.
std::string join_indices(std::span<const int> indices, char sep = '-');

}  // namespace tukey
