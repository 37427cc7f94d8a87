#include <gtest/gtest.h>

#include <cmath>

#include "support/oracles.hpp"
#include "tukey/combinatorics.hpp"
#include "tukey/data.hpp"
#include "tukey/errors.hpp"
#include "tukey/geometry.hpp"

using namespace tukey;

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Dataset simplex3() {
  return Dataset(3, {1, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 0.3, 0.2, 0.1});
}

}  // namespace

TEST(Hyperplane, UnitSimplexFace) {
  const auto h = hyperplane_through(simplex3(), std::vector<int>{0, 1, 2});
  const double r = 1.0 / std::sqrt(3.0);
  for (double c : h.normal) EXPECT_NEAR(c, r, 1e-12);
  EXPECT_NEAR(h.offset, r, 1e-12);
}

TEST(Hyperplane, AxisLineCanonicalSign) {
  const Dataset x(2, {0, 0, 1, 0, 0.3, 2, -1, 5});
  const auto h = hyperplane_through(x, std::vector<int>{0, 1});
  EXPECT_NEAR(h.normal[0], 0.0, 1e-12);
  EXPECT_NEAR(h.normal[1], 1.0, 1e-12);
  EXPECT_NEAR(h.offset, 0.0, 1e-12);
}

TEST(Hyperplane, BlueTripleContainsItsPoints) {
  const auto x = generate_counterexample();
  const std::vector<int> blue{kBlue[0], kBlue[1], kBlue[2]};
  for (auto mode : {Arithmetic::Float, Arithmetic::Exact}) {
    const auto h = hyperplane_through(x, blue, {mode});
    for (int i : blue) EXPECT_NEAR(dot(x.point(i), h.normal), h.offset, 1e-12);
  }
}

TEST(Hyperplane, AgreesWithOracleNormal) {
  const auto x = generate_gaussian(12, 4, 3);
  for_each_combination(x.n(), 4, [&](std::span<const int> t) {
    const auto h = hyperplane_through(x, t);
    const auto p = oracle::plane_of(x, t);
    for (int i = 0; i < 4; ++i) EXPECT_NEAR(h.normal[i], p.normal[i], 1e-9);
    EXPECT_NEAR(h.offset, p.offset, 1e-9);
    return true;
  });
}

TEST(SideCounts, HullFacetCutsOffNothing) {
  const auto x = generate_gaussian(20, 3, 5);
  const auto facets = oracle::hull_facets(x);
  ASSERT_FALSE(facets.empty());
  for (const auto& f : facets)
    EXPECT_EQ(side_counts(x, hyperplane_through(x, f)).smaller(), 0);
}

TEST(SideCounts, BlueTripleCutsOffOneRedOneGreen) {
  const auto x = generate_counterexample();
  for_each_combination(4, 3, [&](std::span<const int> c) {
    std::vector<int> t;
    for (int i : c) t.push_back(kBlue[i]);
    const auto h = hyperplane_through(x, t);
    EXPECT_EQ(side_counts(x, h).smaller(), 2);
    const auto [plus, minus] = halfspaces_of(x, h);
    const auto& small = plus.cutoff.size() == 2 ? plus : minus;
    const auto& large = plus.cutoff.size() == 2 ? minus : plus;
    EXPECT_EQ(large.cutoff.size(), 7u);
    EXPECT_EQ(small.cutoff.size(), 2u);
    if (small.cutoff.size() != 2) return true;
    EXPECT_LT(small.cutoff[0], 4);
    EXPECT_GE(small.cutoff[1], 8);
    return true;
  });
}

TEST(SideCounts, MatchesPerPointSignLoop) {
  const auto x = generate_gaussian(20, 3, 11);
  for (auto mode : {Arithmetic::Float, Arithmetic::Exact}) {
    for_each_combination(x.n(), 3, [&](std::span<const int> t) {
      const auto s = oracle::signs(x, t);
      const auto c = side_counts(x, hyperplane_through(x, t, {mode}), {mode});
      EXPECT_EQ(c.neg, std::count(s.begin(), s.end(), -1));
      EXPECT_EQ(c.pos, std::count(s.begin(), s.end(), 1));
      return true;
    });
  }
}

TEST(SideCounts, FloatAndExactClassifyIdentically) {
  const auto x = generate_gaussian(15, 4, 2);
  for_each_combination(x.n(), 4, [&](std::span<const int> t) {
    const auto hf = hyperplane_through(x, t);
    EXPECT_EQ(classify_points(x, hf), classify_points(x, hf, {Arithmetic::Exact}));
    return true;
  });
}

TEST(GeneralPosition, Counterexample) {
  const auto x = generate_counterexample();
  EXPECT_TRUE(is_general_position(x));
  EXPECT_TRUE(is_general_position(x, {Arithmetic::Exact}));
}

TEST(GeneralPosition, CollinearTriple) {
  const Dataset x(2, {0, 0, 1, 1, 2, 2, 5, 0});
  EXPECT_FALSE(is_general_position(x));
  EXPECT_FALSE(is_general_position(x, {Arithmetic::Exact}));
}

TEST(GeneralPosition, FourCoplanar) {
  const Dataset x(3, {0, 0, 0, 1, 0, 0, 0, 1, 0, 0.25, 0.5, 0, 0.2, 0.3, 1});
  EXPECT_FALSE(is_general_position(x));
  EXPECT_FALSE(is_general_position(x, {Arithmetic::Exact}));
}

TEST(GeneralPosition, ExactSeesWhatFloatBandHides) {
  // Fourth point 1e-12 off the plane z = 0: inside the float band, decidable exactly.
  const Dataset x(3, {0, 0, 0, 1, 0, 0, 0, 1, 0, 0.25, 0.5, 1e-12, 0.2, 0.3, 1});
  EXPECT_FALSE(is_general_position(x));
  EXPECT_TRUE(is_general_position(x, {Arithmetic::Exact}));
}

TEST(Halfspaces, HullFacetHasEmptySide) {
  const auto x = generate_gaussian(15, 3, 4);
  const auto f = oracle::hull_facets(x).front();
  const auto [plus, minus] = halfspaces_of(x, hyperplane_through(x, f));
  EXPECT_TRUE(plus.cutoff.empty() || minus.cutoff.empty());
  const auto& h1 = plus.cutoff.empty() ? plus : minus;
  EXPECT_EQ(h1.level(), 1);
  for (int i = 0; i < x.n(); ++i) EXPECT_TRUE(h1.contains(x.point(i), 1e-12));
}

TEST(Halfspaces, CutoffsPartitionTheRest) {
  const auto x = generate_gaussian(14, 3, 9);
  for_each_combination(x.n(), 3, [&](std::span<const int> t) {
    const auto [plus, minus] = halfspaces_of(x, hyperplane_through(x, t));
    EXPECT_EQ(plus.cutoff.size() + minus.cutoff.size(), static_cast<std::size_t>(x.n() - 3));
    for (int i : plus.cutoff) EXPECT_LT(plus.margin(x.point(i)), 0);
    for (int i : minus.cutoff) EXPECT_LT(minus.margin(x.point(i)), 0);
    EXPECT_EQ(plus.cutoff, oracle::cutoff(x, plus.key()));
    EXPECT_EQ(minus.cutoff, oracle::cutoff(x, minus.key()));
    return true;
  });
}

TEST(Halfspaces, FormatRow) {
  const auto x = generate_counterexample();
  const auto h = make_halfspace(x, hyperplane_through(x, std::vector<int>{0, 1, 2}), Side::Plus);
  const auto row = format_halfspace(h);
  EXPECT_EQ(row.substr(0, 8), "0-1-2|" + std::string(1, side_char(Side::Plus)) + "|");
}

TEST(Dataset, Preconditions) {
  EXPECT_THROW(Dataset(2, {0, 0, 1, 0, 0, 1}), PreconditionError);
  EXPECT_THROW(Dataset(9, std::vector<double>(9 * 12, 0.0)), PreconditionError);
  EXPECT_THROW(Dataset(2, {0, 0, 1, 0, 0, 1, NAN, 1}), PreconditionError);
}

TEST(Combinatorics, ColexRoundTrip) {
  for_each_combination(9, 4, [&](std::span<const int> t) {
    const auto r = colex_rank(t);
    EXPECT_LT(r, binomial(9, 4));
    EXPECT_EQ(colex_unrank(r, 4), std::vector<int>(t.begin(), t.end()));
    return true;
  });
  EXPECT_EQ(binomial(12, 3), 220u);
  EXPECT_EQ(binomial(12, 2), 66u);
}

TEST(Arithmetic, ParseNames) {
  EXPECT_EQ(parse_arithmetic("exact"), Arithmetic::Exact);
  EXPECT_EQ(parse_arithmetic("float"), Arithmetic::Float);
  EXPECT_THROW(parse_arithmetic("double"), PreconditionError);
}
