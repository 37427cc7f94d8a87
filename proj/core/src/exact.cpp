#include "tukey/exact.hpp"

#include <utility>

namespace tukey::exact {

RationalVector to_rational(std::span<const double> v) {
  RationalVector out;
  out.reserve(v.size());
  for (double x : v) out.emplace_back(x);
  return out;
}

std::vector<double> to_double(const RationalVector& v) {
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& q : v) out.push_back(q.get_d());
  return out;
}

Rational determinant(RationalMatrix m) {
  const std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && sgn(m[pivot][col]) == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (sgn(m[r][col]) == 0) continue;
      const Rational f = m[r][col] / m[col][col];
      for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
    }
  }
  return det;
}

std::optional<RationalVector> solve(RationalMatrix a, RationalVector b) {
  const std::size_t n = a.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && sgn(a[pivot][col]) == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || sgn(a[r][col]) == 0) continue;
      const Rational f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  RationalVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

RationalVector cofactor_normal(std::span<const RationalVector> points) {
  const std::size_t d = points.size();
  RationalMatrix diff(d - 1, RationalVector(d));
  for (std::size_t r = 1; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) diff[r - 1][c] = points[r][c] - points[0][c];

  RationalVector out(d);
  for (std::size_t i = 0; i < d; ++i) {
    RationalMatrix minor(d - 1, RationalVector());
    for (std::size_t r = 0; r + 1 < d; ++r) {
      minor[r].reserve(d - 1);
      for (std::size_t c = 0; c < d; ++c)
        if (c != i) minor[r].push_back(diff[r][c]);
    }
    Rational m = d == 1 ? Rational(1) : determinant(std::move(minor));
    // Expansion along the last row (index d-1).
    out[i] = ((d - 1 + i) % 2 == 0) ? m : Rational(-m);
  }
  return out;
}

Rational dot(const RationalVector& a, const RationalVector& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace tukey::exact
