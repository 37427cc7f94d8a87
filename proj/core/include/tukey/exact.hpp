#pragma once

// Small dense linear algebra over GMP rationals. Every IEEE double is a
// dyadic rational, so converting stored coordinates is lossless.

#include <gmpxx.h>

#include <optional>
#include <span>
#include <vector>

namespace tukey::exact {

using Rational = mpq_class;
using RationalVector = std::vector<Rational>;
using RationalMatrix = std::vector<RationalVector>;

inline Rational to_rational(double v) { return Rational(v); }
RationalVector to_rational(std::span<const double> v);
std::vector<double> to_double(const RationalVector& v);

inline int sign(const Rational& q) { return sgn(q); }

/// Determinant by fraction-exact Gaussian elimination. Consumes its input.
Rational determinant(RationalMatrix m);

/// Solves a * x = b for square a. nullopt when a is singular.
std::optional<RationalVector> solve(RationalMatrix a, RationalVector b);

/// For d points p_0..p_{d-1} in R^d returns C with
/// det[p_1 - p_0; ...; p_{d-1} - p_0; v] = <C, v> for every v.
RationalVector cofactor_normal(std::span<const RationalVector> points);

Rational dot(const RationalVector& a, const RationalVector& b);

}  // namespace tukey::exact
