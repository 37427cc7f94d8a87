#pragma once

// Ground truth independent of the search: depth of an arbitrary point by
// enumerating ridge-supported directions, and membership in the region of
// the complete H(k).

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "tukey/geometry.hpp"

namespace tukey {

/// Integer Tukey depth of x: the minimum number of data points in a closed
/// halfspace with x on its boundary. Every hyperplane through x and a ridge
/// is tried with both orientations, counting points strictly on one side;
/// a data point equal to x counts once more. O(C(n, d-1) * n).
/// Throws DegenerateInput if x lies on a hyperplane through d-1 data points
/// (within eps in float mode) and DimensionMismatch on a wrong-sized x.
int exact_depth(std::span<const double> x, const Dataset& data, const Predicates& pred = {});

/// x lies in every halfspace of the complete H(k) (closed).
bool region_membership(std::span<const double> x, const Dataset& data, int k,
                       const Predicates& pred = {});
/// Same, against a precomputed halfspace set.
bool region_membership(std::span<const double> x, const Dataset& data,
                       std::span<const Halfspace> hk, const Predicates& pred = {});

struct Inconsistency {
  std::size_t probe = 0;
  int depth = 0;
  bool member = false;
};

struct ConsistencyReport {
  int level = 0;
  std::size_t checked = 0;
  std::vector<Inconsistency> violations;
  bool ok() const noexcept { return violations.empty(); }
};

/// Checks exact_depth(x) >= k  <=>  region_membership(x, k) on every probe.
ConsistencyReport depth_region_consistency(const Dataset& data, std::span<const Point> probes,
                                           int k, const Predicates& pred = {});

/// Normal probes around the barycentre, scaled to the data's spread, kept only
/// when no observational hyperplane and no hyperplane through a ridge passes
/// within eps of them.
std::vector<Point> sample_probes(const Dataset& data, std::size_t count, std::uint64_t seed,
                                 const Predicates& pred = {});

}  // namespace tukey
