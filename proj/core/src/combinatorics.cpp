#include "tukey/combinatorics.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <string>

namespace tukey {

namespace {

constexpr int kTableSize = 512;

// Pascal triangle up to n = kTableSize - 1 with saturation; computed once.
const std::vector<std::uint64_t>& pascal() {
  static const std::vector<std::uint64_t> table = [] {
    std::vector<std::uint64_t> t(kTableSize * kTableSize, 0);
    constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
    for (int n = 0; n < kTableSize; ++n) {
      t[n * kTableSize] = 1;
      for (int r = 1; r <= n; ++r) {
        const std::uint64_t a = t[(n - 1) * kTableSize + r - 1];
        const std::uint64_t b = t[(n - 1) * kTableSize + r];
        t[n * kTableSize + r] = (a > kMax - b) ? kMax : a + b;
      }
    }
    return t;
  }();
  return table;
}

}  // namespace

std::uint64_t binomial(int n, int r) {
  if (r < 0 || n < 0 || r > n) return 0;
  if (n < kTableSize) return pascal()[n * kTableSize + r];
  // Outside the table: multiplicative formula, saturating.
  r = std::min(r, n - r);
  long double acc = 1.0L;
  for (int i = 1; i <= r; ++i) acc = acc * (n - r + i) / i;
  if (acc >= static_cast<long double>(std::numeric_limits<std::uint64_t>::max()))
    return std::numeric_limits<std::uint64_t>::max();
  return static_cast<std::uint64_t>(acc + 0.5L);
}

std::uint64_t colex_rank(std::span<const int> sorted) {
  std::uint64_t rank = 0;
  for (std::size_t j = 0; j < sorted.size(); ++j)
    rank += binomial(sorted[j], static_cast<int>(j) + 1);
  return rank;
}

std::vector<int> colex_unrank(std::uint64_t rank, int r) {
  std::vector<int> out(static_cast<std::size_t>(r));
  for (int j = r; j >= 1; --j) {
    int v = j - 1;
    while (binomial(v + 1, j) <= rank) ++v;
    out[j - 1] = v;
    rank -= binomial(v, j);
  }
  return out;
}

std::vector<int> insert_sorted(std::span<const int> sorted, int index) {
  std::vector<int> out;
  out.reserve(sorted.size() + 1);
  auto it = std::lower_bound(sorted.begin(), sorted.end(), index);
  out.insert(out.end(), sorted.begin(), it);
  out.push_back(index);
  out.insert(out.end(), it, sorted.end());
  return out;
}

std::vector<int> erase_at(std::span<const int> sorted, std::size_t pos) {
  std::vector<int> out;
  out.reserve(sorted.size() - 1);
  for (std::size_t i = 0; i < sorted.size(); ++i)
    if (i != pos) out.push_back(sorted[i]);
  return out;
}

int shared_count(std::span<const int> a, std::span<const int> b) {
  int count = 0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) {
      ++count;
      ++i;
      ++j;
    } else if (a[i] < b[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  return count;
}

std::string join_indices(std::span<const int> indices, char sep) {
  std::string out;
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (i) out.push_back(sep);
    out += std::to_string(indices[i]);
  }
  return out;
}

}  // namespace tukey
