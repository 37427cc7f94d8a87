#pragma once

// Central regions as polytopes: intersection of a halfspace set, emptiness
// and dimension classification, and the Tukey median.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "tukey/geometry.hpp"

namespace tukey {

enum class RegionStatus { FullDim, LowerDim, Empty };

std::string_view to_string(RegionStatus s);

struct RegionPolytope {
  int level = 0;
  int dim = 0;
  RegionStatus status = RegionStatus::Empty;
  /// Deduplicated, lexicographically ordered.
  std::vector<Point> vertices;
  /// Input halfspaces whose boundary supports a facet, in key order. For
  /// lower-dimensional regions: every halfspace tight at some vertex.
  std::vector<Halfspace> facet_halfspaces;
  /// Positions of facet_halfspaces in the key-sorted input.
  std::vector<std::size_t> facet_rows;
  /// Centre of the largest inscribed ball (FullDim only).
  std::vector<double> interior;
  double inradius = 0.0;

  /// Closed membership against the facet halfspaces with an absolute slack.
  bool contains(std::span<const double> x, double tol = 1e-9) const;
  Point vertex_mean() const;
};

/// Merge distance for vertices.
inline constexpr double kVertexTol = 1e-7;

/// Intersection of a non-empty halfspace set. Full-dimensional regions are
/// found from an interior point (Chebyshev LP) and the convex hull of the
/// polar dual; thin or empty ones fall back to d-subset enumeration.
/// Throws PreconditionError on an empty set, DimensionMismatch on mixed
/// dimensions.
RegionPolytope intersect_halfspaces(std::span<const Halfspace> halfspaces, int dim,
                                    int level = 0);

/// Reference implementation: every d-subset of boundary hyperplanes is solved
/// and filtered for feasibility. O(m^d); for tests and lower-dimensional
/// regions.
RegionPolytope intersect_halfspaces_bruteforce(std::span<const Halfspace> halfspaces,
                                               int dim, int level = 0);

/// Status only (one LP, no vertex enumeration).
RegionStatus classify_intersection(const Dataset& data,
                                   std::span<const Halfspace> halfspaces,
                                   const Predicates& pred = {});

/// Position of a vertex of ∩inner relative to ∩outer: +1 strictly inside
/// every outer halfspace, 0 on some boundary, -1 outside. Float margins above
/// 1e-6 are trusted; closer cases are decided in rational arithmetic by
/// re-deriving the vertex from d tight inner hyperplanes through data points.
int vertex_position(const Dataset& data, std::span<const Halfspace> inner,
                    std::span<const double> vertex, std::span<const Halfspace> outer);

/// True iff every vertex of `inner_region` is strictly inside all of `outer`.
bool strictly_nested(const Dataset& data, const RegionPolytope& inner_region,
                     std::span<const Halfspace> inner, std::span<const Halfspace> outer);

struct MedianResult {
  int k_max = 0;
  RegionPolytope region;
  Point barycentre;
};

/// Computes levels 1, 2, ... (strategy B) until the first empty region and
/// returns the deepest non-empty one with the mean of its vertices.
MedianResult tukey_median(const Dataset& data, const Predicates& pred = {});

}  // namespace tukey
