#pragma once

// Floating-point polytope primitives backing the region module: a Chebyshev
// centre LP and a d-dimensional quickhull.

#include <span>
#include <vector>

namespace tukey::polytope {

/// a . x <= b with a unit-length a.
struct Constraint {
  std::vector<double> a;
  double b = 0.0;
};

struct ChebyshevResult {
  std::vector<double> centre;
  /// Radius of the largest inscribed ball, capped at the requested cap.
  /// Negative when the constraint system is infeasible (the value is then
  /// minus the smallest uniform relaxation that makes it feasible).
  double radius = 0.0;
};

/// Maximises r subject to a_j . x + r <= b_j and r <= radius_cap. Solved as
/// the dual LP with a dense two-phase simplex (d + 1 equality rows).
ChebyshevResult chebyshev_centre(std::span<const Constraint> rows, int dim,
                                 double radius_cap = 1.0);

struct HullFacet {
  std::vector<int> vertices;  // d point indices
  std::vector<double> normal; // outward unit normal
  double offset = 0.0;        // normal . p == offset on the facet
};

/// Facets of conv(points) for full-dimensional point sets, triangulated.
/// Points within eps * scale of a facet plane are treated as inside.
/// Throws NumericalFailure when the points do not span R^dim.
std::vector<HullFacet> convex_hull(std::span<const std::vector<double>> points,
                                   int dim, double eps = 1e-10);

}  // namespace tukey::polytope
