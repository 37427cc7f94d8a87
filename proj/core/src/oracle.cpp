#include "tukey/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "tukey/combinatorics.hpp"
#include "tukey/data.hpp"
#include "tukey/errors.hpp"
#include "tukey/search.hpp"

namespace tukey {

namespace {

PlaneEvaluator evaluator(const Dataset& data, std::span<const int> tuple,
                         const Predicates& pred) {
  std::span<const double> pts[kMaxDim];
  for (std::size_t i = 0; i < tuple.size(); ++i) pts[i] = data.point(tuple[i]);
  return PlaneEvaluator(std::span<const std::span<const double>>(pts, tuple.size()), pred);
}

// Closed membership: a point on the boundary (sign 0) is inside.
bool inside(const PlaneEvaluator& ev, Side side, std::span<const double> x) {
  const int s = ev.side_or_zero(x);
  return s == 0 || s == static_cast<int>(side);
}

class Membership {
 public:
  Membership(const Dataset& data, std::span<const Halfspace> hk, const Predicates& pred) {
    for (const auto& h : hk) {
      evs_.push_back(evaluator(data, h.plane.indices, pred));
      sides_.push_back(h.side);
    }
  }
  bool operator()(std::span<const double> x) const {
    for (std::size_t i = 0; i < evs_.size(); ++i)
      if (!inside(evs_[i], sides_[i], x)) return false;
    return true;
  }

 private:
  std::vector<PlaneEvaluator> evs_;
  std::vector<Side> sides_;
};

std::vector<Halfspace> complete_level(const Dataset& data, int k, const Predicates& pred) {
  return SearchEngine(data, pred).search(k, InitStrategy{Strategy::C, {}}).halfspaces;
}

}  // namespace

int exact_depth(std::span<const double> x, const Dataset& data, const Predicates& pred) {
  const int d = data.dim();
  if (static_cast<int>(x.size()) != d) throw DimensionMismatch("query point dimension");

  // Data points equal to x are always in the halfspace; take them out of the
  // enumeration and add them back at the end.
  std::vector<int> others;
  int coincident = 0;
  for (int i = 0; i < data.n(); ++i) {
    const auto p = data.point(i);
    if (std::equal(p.begin(), p.end(), x.begin()))
      ++coincident;
    else
      others.push_back(i);
  }

  int best = static_cast<int>(others.size());
  std::vector<std::span<const double>> pts(static_cast<std::size_t>(d));
  pts[0] = x;
  for_each_subset(others, d - 1, [&](std::span<const int> ridge) {
    for (int i = 0; i < d - 1; ++i) pts[i + 1] = data.point(ridge[i]);
    PlaneEvaluator ev(pts, pred);
    int neg = 0, pos = 0;
    std::size_t r = 0;
    for (int i : others) {
      if (r < ridge.size() && ridge[r] == i) {
        ++r;
        continue;
      }
      (ev.side(data.point(i)) < 0 ? neg : pos)++;
    }
    best = std::min({best, neg, pos});
    return best > 0;
  });
  return best + coincident;
}

bool region_membership(std::span<const double> x, const Dataset& data,
                       std::span<const Halfspace> hk, const Predicates& pred) {
  if (static_cast<int>(x.size()) != data.dim()) throw DimensionMismatch("query point dimension");
  return Membership(data, hk, pred)(x);
}

bool region_membership(std::span<const double> x, const Dataset& data, int k,
                       const Predicates& pred) {
  return region_membership(x, data, complete_level(data, k, pred), pred);
}

ConsistencyReport depth_region_consistency(const Dataset& data, std::span<const Point> probes,
                                           int k, const Predicates& pred) {
  ConsistencyReport rep;
  rep.level = k;
  const auto hk = complete_level(data, k, pred);
  const Membership member(data, hk, pred);
  for (std::size_t i = 0; i < probes.size(); ++i) {
    const int depth = exact_depth(probes[i].coords(), data, pred);
    const bool in = member(probes[i].coords());
    ++rep.checked;
    if ((depth >= k) != in) rep.violations.push_back({i, depth, in});
  }
  return rep;
}

std::vector<Point> sample_probes(const Dataset& data, std::size_t count, std::uint64_t seed,
                                 const Predicates& pred) {
  const int d = data.dim();
  const Point centre = data.barycentre();
  std::vector<double> spread(static_cast<std::size_t>(d), 0.0);
  for (int i = 0; i < data.n(); ++i)
    for (int j = 0; j < d; ++j) {
      const double t = data.point(i)[j] - centre[j];
      spread[j] += t * t;
    }
  for (auto& s : spread) s = std::sqrt(s / data.n());

  std::vector<PlaneEvaluator> planes;
  for_each_combination(data.n(), d, [&](std::span<const int> t) {
    planes.push_back(evaluator(data, t, pred));
    return true;
  });

  SplitMix64 rng(seed);
  std::vector<Point> out;
  std::size_t attempts = 0;
  while (out.size() < count) {
    if (++attempts > 100 * count + 1000)
      throw ConstructionFailed("could not sample probes off the observational hyperplanes");
    std::vector<double> p(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) p[j] = centre[j] + spread[j] * rng.normal();
    const bool clear = std::all_of(planes.begin(), planes.end(), [&](const PlaneEvaluator& ev) {
      return ev.side_or_zero(p) != 0;
    });
    if (!clear) continue;
    try {
      exact_depth(p, data, pred);
    } catch (const DegenerateInput&) {
      continue;
    }
    out.emplace_back(std::move(p));
  }
  return out;
}

}  // namespace tukey
