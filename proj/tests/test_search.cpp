#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "support/oracles.hpp"
#include "tukey/combinatorics.hpp"
#include "tukey/data.hpp"
#include "tukey/errors.hpp"
#include "tukey/search.hpp"

using namespace tukey;

namespace {

enum Oct { A, B, C, D, E, F, G, H };

std::vector<HalfspaceKey> keys_of(const std::vector<Halfspace>& hs) {
  std::vector<HalfspaceKey> out;
  for (const auto& h : hs) out.push_back(h.key());
  std::sort(out.begin(), out.end());
  return out;
}

/// Defining points of each orbit, as sorted index sets.
std::set<std::vector<int>> orbit_point_sets(const SearchResult& r) {
  std::set<std::vector<int>> out;
  for (const auto& orbit : r.orbits) {
    std::set<int> pts;
    for (auto pos : orbit)
      for (int i : r.halfspaces[pos].plane.indices) pts.insert(i);
    out.insert({pts.begin(), pts.end()});
  }
  return out;
}

std::set<std::vector<int>> ridge_set(const std::vector<Ridge>& q) {
  std::set<std::vector<int>> out;
  for (const auto& r : q) out.insert(r.indices);
  return out;
}

bool is_blue(int i) { return i >= kBlue.front() && i <= kBlue.back(); }

std::vector<HalfspaceKey> blue_triple_keys(const Dataset& x) {
  std::vector<HalfspaceKey> out;
  for (const auto& key : oracle::relevant(x, 3))
    if (std::all_of(key.indices.begin(), key.indices.end(), is_blue)) out.push_back(key);
  return out;
}

}  // namespace

TEST(Strategy, Names) {
  EXPECT_EQ(parse_strategy("a2"), Strategy::A2);
  EXPECT_EQ(parse_strategy("ReducedD2"), Strategy::ReducedD2);
  EXPECT_EQ(parse_strategy("k2"), Strategy::ReducedK2);
  EXPECT_EQ(to_string(Strategy::B), "B");
  EXPECT_THROW(parse_strategy("Z"), PreconditionError);
}

TEST(Strategy, ExactFlag) {
  EXPECT_TRUE(strategy_is_exact(Strategy::C, 5, 9));
  EXPECT_TRUE(strategy_is_exact(Strategy::B, 5, 9));
  EXPECT_TRUE(strategy_is_exact(Strategy::A, 2, 9));
  EXPECT_TRUE(strategy_is_exact(Strategy::A, 4, 2));
  EXPECT_FALSE(strategy_is_exact(Strategy::A, 3, 3));
  EXPECT_TRUE(strategy_is_exact(Strategy::ReducedD2, 2, 5));
  EXPECT_TRUE(strategy_is_exact(Strategy::ReducedK2, 3, 2));
}

TEST(Strategy, Preconditions) {
  const auto x = generate_counterexample();
  EXPECT_THROW(ridge_search(x, 2, {Strategy::B}), EmptyPrior);
  EXPECT_THROW(ridge_search(x, 2, {Strategy::ReducedD2}), DimensionMismatch);
  EXPECT_THROW(ridge_search(x, 3, {Strategy::ReducedK2}), PreconditionError);
  EXPECT_THROW(ridge_search(x, 0, {Strategy::C}), PreconditionError);
  EXPECT_THROW(ridge_search(x, 7, {Strategy::C}), PreconditionError);
  const auto h1 = ridge_search(x, 1, {Strategy::C});
  // Prior at the wrong level.
  EXPECT_THROW(ridge_search(x, 3, {Strategy::B, h1.halfspaces}), PreconditionError);
}

TEST(ThroughRidge, OctagonPointA) {
  const auto x = generate_octagon();
  const auto hs = relevant_halfspaces_through_ridge(x, Ridge{{A}}, 2);
  ASSERT_EQ(hs.size(), 2u);
  EXPECT_EQ(hs[0].plane.indices, (std::vector<int>{A, C}));
  EXPECT_EQ(hs[1].plane.indices, (std::vector<int>{A, G}));
}

TEST(ThroughRidge, HullRidgeAtLevelOne) {
  const auto x = generate_gaussian(15, 3, 7);
  const auto facet = oracle::hull_facets(x).front();
  const Ridge r{{facet[0], facet[1]}};
  const auto keys = keys_of(relevant_halfspaces_through_ridge(x, r, 1));
  EXPECT_TRUE(std::any_of(keys.begin(), keys.end(),
                          [&](const HalfspaceKey& k) { return k.indices == facet; }));
}

TEST(ThroughRidge, MatchesCompletionLoop) {
  const auto x = generate_gaussian(15, 3, 21);
  for (const auto& ridge : {Ridge{{0, 1}}, Ridge{{3, 9}}, Ridge{{5, 14}}}) {
    std::vector<HalfspaceKey> expect;
    for (const auto& key : oracle::relevant(x, 3))
      if (std::includes(key.indices.begin(), key.indices.end(), ridge.indices.begin(),
                        ridge.indices.end()))
        expect.push_back(key);
    EXPECT_EQ(keys_of(relevant_halfspaces_through_ridge(x, ridge, 3)), expect);
  }
}

TEST(Orbit, OctagonLevelTwoFromA) {
  const auto x = generate_octagon();
  std::set<int> pts;
  for (const auto& h : orbit_of(x, 2, Ridge{{A}}))
    for (int i : h.plane.indices) pts.insert(i);
  EXPECT_EQ(pts, (std::set<int>{A, C, E, G}));
}

TEST(Orbit, OctagonLevelFourFromA) {
  const auto x = generate_octagon();
  std::set<int> pts;
  for (const auto& h : orbit_of(x, 4, Ridge{{A}}))
    for (int i : h.plane.indices) pts.insert(i);
  EXPECT_EQ(pts, (std::set<int>{A, E}));
}

TEST(Orbit, LevelOneIsTheHull) {
  for (std::uint64_t seed : {1, 2, 3}) {
    const auto x = generate_gaussian(18, 3, seed);
    SearchEngine eng(x);
    const auto orbit = eng.orbit_of(eng.hull_ridge(), 1);
    std::vector<std::vector<int>> tuples;
    for (const auto& h : orbit) tuples.push_back(h.plane.indices);
    std::sort(tuples.begin(), tuples.end());
    EXPECT_EQ(tuples, oracle::hull_facets(x));
  }
}

TEST(Orbit, PartitionMatchesUnionFind) {
  const auto x = generate_gaussian(14, 3, 31);
  for (int k = 1; k <= 6; ++k) {
    const auto r = ridge_search(x, k, {Strategy::C});
    std::vector<std::vector<HalfspaceKey>> got;
    std::size_t total = 0;
    for (const auto& orbit : r.orbits) {
      std::vector<HalfspaceKey> o;
      for (auto pos : orbit) o.push_back(r.halfspaces[pos].key());
      total += o.size();
      got.push_back(o);
    }
    std::sort(got.begin(), got.end());
    EXPECT_EQ(total, r.halfspaces.size());
    EXPECT_EQ(got, oracle::orbits(r.keys(), 3)) << "k=" << k;
  }
}

TEST(InitA, OctagonQueue) {
  const auto x = generate_octagon();
  SearchEngine eng(x);
  const auto q = ridge_set(eng.init_A(2));
  for (int p : {A, C, G, B, H}) EXPECT_TRUE(q.count({p})) << p;
}

TEST(InitA, LevelOneHasHullRidge) {
  const auto x = generate_gaussian(20, 4, 8);
  SearchEngine eng(x);
  const auto q = eng.init_A(1);
  const auto hr = eng.hull_ridge();
  EXPECT_TRUE(ridge_set(q).count(hr.indices));
  EXPECT_EQ(ridge_search(x, 1, {Strategy::A}).keys(), oracle::relevant(x, 1));
}

TEST(InitA, CounterexampleColours) {
  const auto x = generate_counterexample();
  SearchEngine eng(x);
  const auto q = eng.init_A(3);
  ASSERT_FALSE(q.empty());
  for (const auto& r : q) {
    // R-R, R-B or R-G: sorted, so the red point comes first.
    EXPECT_LT(r.indices[0], kBlue.front());
  }
}

TEST(InitB, LevelTwoFromHullFacets) {
  const auto x = generate_gaussian(16, 3, 12);
  SearchEngine eng(x);
  const auto h1 = eng.search(1, {Strategy::C});
  std::set<std::vector<int>> expect;
  for (const auto& f : oracle::hull_facets(x))
    for (const auto& r : ridges_of(f)) expect.insert(r.indices);
  EXPECT_EQ(ridge_set(eng.init_B(2, h1.halfspaces)), expect);
}

TEST(InitB, RecoversBlueTriples) {
  const auto x = generate_counterexample();
  SearchEngine eng(x);
  const auto h2 = eng.search(2, {Strategy::C});
  const auto keys = eng.search(3, {Strategy::B, h2.halfspaces}).keys();
  for (const auto& b : blue_triple_keys(x))
    EXPECT_TRUE(std::binary_search(keys.begin(), keys.end(), b));
  EXPECT_EQ(keys, oracle::relevant(x, 3));
}

TEST(InitB, OctagonLevelFour) {
  const auto x = generate_octagon();
  SearchEngine eng(x);
  const auto h3 = eng.search(3, {Strategy::C});
  const auto r = eng.search(4, {Strategy::B, h3.halfspaces});
  EXPECT_EQ(orbit_point_sets(r),
            (std::set<std::vector<int>>{{A, E}, {B, F}, {C, G}, {D, H}}));
}

TEST(InitC, QueueSize) {
  EXPECT_EQ(SearchEngine(generate_counterexample()).init_C().size(), 66u);
  EXPECT_EQ(SearchEngine(generate_octagon()).init_C().size(), 8u);
  EXPECT_EQ(SearchEngine(generate_gaussian(13, 4, 2)).init_C().size(), binomial(13, 3));
}

TEST(InitA2, LevelOneExact) {
  const auto x = generate_gaussian(18, 3, 14);
  EXPECT_EQ(ridge_search(x, 1, {Strategy::A2}).keys(), oracle::relevant(x, 1));
}

TEST(InitA2, CounterexampleStillMissesBlue) {
  const auto x = generate_counterexample();
  const auto c = ridge_search(x, 3, {Strategy::C}).keys();
  const auto a2 = ridge_search(x, 3, {Strategy::A2}).keys();
  std::vector<HalfspaceKey> missing;
  std::set_difference(c.begin(), c.end(), a2.begin(), a2.end(), std::back_inserter(missing));
  EXPECT_EQ(missing, blue_triple_keys(x));
}

TEST(InitA2, ContainsQueueOfA) {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const auto x = generate_gaussian(16, 3, seed);
    SearchEngine eng(x);
    for (int k = 1; k <= 5; ++k) {
      const auto a = ridge_set(eng.init_A(k));
      const auto a2 = ridge_set(eng.init_A2(k));
      EXPECT_TRUE(std::includes(a2.begin(), a2.end(), a.begin(), a.end()))
          << "seed=" << seed << " k=" << k;
    }
  }
}

TEST(InitReducedD2, OctagonQueue) {
  const auto x = generate_octagon();
  SearchEngine eng(x);
  EXPECT_EQ(ridge_set(eng.init_reduced_d2(2)), (std::set<std::vector<int>>{{A}, {B}}));
  EXPECT_EQ(eng.init_reduced_d2(1).size(), 1u);
}

TEST(InitReducedD2, MatchesC) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto x = generate_gaussian(20, 2, seed);
    SearchEngine eng(x);
    for (int k = 1; 2 * k < x.n(); ++k)
      EXPECT_EQ(eng.search(k, {Strategy::ReducedD2}).keys(), eng.search(k, {Strategy::C}).keys())
          << "seed=" << seed << " k=" << k;
  }
}

TEST(InitReducedK2, OctagonAndCounterexample) {
  for (const auto& x : {generate_octagon(), generate_counterexample()}) {
    SearchEngine eng(x);
    const auto q = eng.init_reduced_k2();
    EXPECT_LE(q.size(), static_cast<std::size_t>(x.dim() * x.dim()));
    EXPECT_EQ(eng.search(2, {Strategy::ReducedK2}).keys(), eng.search(2, {Strategy::C}).keys());
  }
  SearchEngine eng(generate_octagon());
  EXPECT_EQ(eng.init_reduced_k2().size(), 2u * 2u);
}

TEST(Search, CounterexampleStrategies) {
  const auto x = generate_counterexample();
  const auto c = ridge_search(x, 3, {Strategy::C});
  const auto a = ridge_search(x, 3, {Strategy::A});
  const auto blue = blue_triple_keys(x);
  ASSERT_EQ(blue.size(), 4u);
  const auto ck = c.keys();
  for (const auto& b : blue) EXPECT_TRUE(std::binary_search(ck.begin(), ck.end(), b));
  std::vector<HalfspaceKey> missing;
  const auto ak = a.keys();
  std::set_difference(ck.begin(), ck.end(), ak.begin(), ak.end(), std::back_inserter(missing));
  EXPECT_EQ(missing, blue);
  EXPECT_EQ(ak.size() + 4, ck.size());
  EXPECT_TRUE(c.exact);
  EXPECT_FALSE(a.exact);
}

TEST(Search, CMatchesExhaustiveEnumeration) {
  for (auto [n, d, seed] : {std::tuple{16, 3, 1}, std::tuple{14, 4, 2}, std::tuple{12, 5, 3}}) {
    const auto x = generate_gaussian(n, d, seed);
    SearchEngine eng(x);
    for (int k = 1; 2 * k <= n; ++k) {
      const auto r = eng.search(k, {Strategy::C});
      EXPECT_EQ(r.keys(), oracle::relevant(x, k)) << n << "," << d << " k=" << k;
      for (const auto& h : r.halfspaces) EXPECT_EQ(h.level(), k);
    }
  }
}

TEST(Search, ExactArithmeticAgrees) {
  const auto x = generate_gaussian(16, 3, 41);
  SearchEngine fl(x);
  SearchEngine ex(x, {Arithmetic::Exact});
  for (int k = 1; k <= 8; ++k)
    EXPECT_EQ(fl.search(k, {Strategy::C}).keys(), ex.search(k, {Strategy::C}).keys());
}

TEST(Search, ChainedBMatchesC) {
  const auto x = generate_gaussian(24, 3, 5);
  SearchEngine eng(x);
  auto prior = eng.search(1, {Strategy::C});
  for (int k = 2; k <= (x.n() - x.dim() + 1) / 2; ++k) {
    const auto b = eng.search(k, {Strategy::B, prior.halfspaces});
    EXPECT_EQ(b.keys(), eng.search(k, {Strategy::C}).keys()) << "k=" << k;
    EXPECT_TRUE(b.exact);
    prior = b;
  }
}

TEST(Search, AExactAtLowLevels) {
  for (int d : {3, 4, 5}) {
    const auto x = generate_gaussian(14, d, 100 + d);
    SearchEngine eng(x);
    for (int k : {1, 2}) EXPECT_EQ(eng.search(k, {Strategy::A}).keys(), oracle::relevant(x, k));
    EXPECT_EQ(eng.search(2, {Strategy::ReducedK2}).keys(), oracle::relevant(x, 2));
  }
}

TEST(Search, HullOrbitEqualsHullFacets) {
  const auto x = generate_gaussian(20, 4, 77);
  const auto r = ridge_search(x, 1, {Strategy::C});
  ASSERT_EQ(r.orbits.size(), 1u);
  std::vector<std::vector<int>> tuples;
  for (const auto& h : r.halfspaces) tuples.push_back(h.plane.indices);
  EXPECT_EQ(tuples, oracle::hull_facets(x));
}

// Rotating the boundary of H in H(k+1) around a ridge toward its nearest
// cut-off point a either drops a point (landing in H(k)) or keeps the same
// cut-off set with a strictly closer to the boundary. Iterating reaches H(k)
// through neighbouring halfspaces.
TEST(RotationStep, ReachesLowerLevelThroughRidges) {
  for (auto [n, d, seed] : {std::tuple{14, 2, 1}, std::tuple{14, 3, 2}, std::tuple{13, 4, 3}}) {
    const auto x = generate_gaussian(n, d, seed);
    for (int k = 1; k <= 4; ++k) {
      for (const auto& start : oracle::relevant(x, k + 1)) {
        auto h = start;
        auto cut = oracle::cutoff(x, h);
        bool reached = false;
        for (int step = 0; step < 10 * n * n; ++step) {
          const auto s = oracle::rotate_toward_nearest(x, h);
          ASSERT_TRUE(s.has_value());
          std::vector<int> common;
          std::set_intersection(h.indices.begin(), h.indices.end(), s->next.indices.begin(),
                                s->next.indices.end(), std::back_inserter(common));
          ASSERT_EQ(static_cast<int>(common.size()), d - 1);
          if (static_cast<int>(s->next_cutoff.size()) == k - 1) {
            EXPECT_TRUE(std::includes(cut.begin(), cut.end(), s->next_cutoff.begin(),
                                      s->next_cutoff.end()));
            reached = true;
            break;
          }
          ASSERT_EQ(s->next_cutoff, cut);
          ASSERT_LT(s->dist_after, s->dist_before);
          h = s->next;
        }
        EXPECT_TRUE(reached);
      }
    }
  }
}

TEST(AllRegions, OctagonLevels) {
  const auto res = compute_all_regions(generate_octagon(), 4);
  ASSERT_EQ(res.size(), 4u);
  for (const auto& r : res) {
    EXPECT_FALSE(r.skipped);
    EXPECT_FALSE(r.halfspaces.empty());
  }
}

TEST(AllRegions, CounterexampleFiveLevels) {
  const auto x = generate_counterexample();
  const auto res = compute_all_regions(x, 5);
  ASSERT_EQ(res.size(), 5u);
  for (int k = 1; k <= 5; ++k) {
    EXPECT_FALSE(res[k - 1].halfspaces.empty()) << k;
    EXPECT_EQ(res[k - 1].keys(), oracle::relevant(x, k)) << k;
  }
}

TEST(AllRegions, SkipsAfterEmptyRegion) {
  const auto x = generate_counterexample();
  const auto res = compute_all_regions(x, 6);
  ASSERT_EQ(res.size(), 6u);
  EXPECT_TRUE(res[5].skipped);
  EXPECT_TRUE(res[5].halfspaces.empty());
}

TEST(Ridges, OfTuple) {
  const auto r = ridges_of(std::vector<int>{2, 5, 9});
  ASSERT_EQ(r.size(), 3u);
  EXPECT_EQ(r[0].indices, (std::vector<int>{2, 5}));
  EXPECT_EQ(r[1].indices, (std::vector<int>{2, 9}));
  EXPECT_EQ(r[2].indices, (std::vector<int>{5, 9}));
}
