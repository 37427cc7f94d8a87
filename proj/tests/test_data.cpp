#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <set>

#include "support/oracles.hpp"
#include "tukey/data.hpp"
#include "tukey/errors.hpp"
#include "tukey/oracle.hpp"
#include "tukey/search.hpp"

using namespace tukey;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "tukey_tests";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST(SplitMix, ReferenceOutput) {
  SplitMix64 r(0);
  EXPECT_EQ(r.next(), 0xE220A8397B1DCDAFull);
  SplitMix64 a(42), b(42);
  for (int i = 0; i < 100; ++i) {
    const double u = a.uniform();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
    EXPECT_EQ(u, b.uniform());
  }
}

TEST(Counterexample, Structure) {
  const auto x = generate_counterexample();
  ASSERT_EQ(x.n(), 12);
  EXPECT_EQ(x.label(0), "r1");
  EXPECT_EQ(x.label(11), "g4");
  EXPECT_TRUE(is_general_position(x, {Arithmetic::Exact}));
  const double s8 = 0.35355339059327373;
  for (int j = 0; j < 3; ++j) EXPECT_NEAR(x.point(3)[j], s8, 1e-15);

  std::set<int> hull;
  for (const auto& f : oracle::hull_facets(x)) hull.insert(f.begin(), f.end());
  EXPECT_EQ(hull, (std::set<int>{0, 1, 2, 3}));

  // Each green point is separated from the blue tetrahedron by one of its faces.
  for (int g : kGreen) {
    bool outside = false;
    for (int skip : kBlue) {
      std::vector<int> face;
      for (int b : kBlue)
        if (b != skip) face.push_back(b);
      const auto s = oracle::signs(x, face);
      outside = outside || s[g] != s[skip];
    }
    EXPECT_TRUE(outside) << x.label(g);
  }
}

TEST(Counterexample, DepthAndRelevance) {
  const auto x = generate_counterexample();
  for (int g : kGreen) EXPECT_EQ(exact_depth(x.point(g), x), 2);
  const auto h3 = oracle::relevant(x, 3);
  int blue = 0;
  for (const auto& k : h3)
    if (k.indices[0] >= kBlue[0] && k.indices[2] <= kBlue[3]) ++blue;
  EXPECT_EQ(blue, 4);
}

TEST(Counterexample, SeededJitterKeepsTheSignature) {
  const CounterexampleSpec spec{.seed = 17};
  const auto x = generate_counterexample(spec);
  EXPECT_FALSE(x == generate_counterexample());
  EXPECT_TRUE(x == generate_counterexample(spec));
  const auto c = ridge_search(x, 3, {Strategy::C}).halfspaces.size();
  EXPECT_EQ(ridge_search(x, 3, {Strategy::A}).halfspaces.size() + 4, c);
}

TEST(Counterexample, RejectsLargeRotation) {
  CounterexampleSpec spec;
  spec.blue_rotation.degrees = 60.0;
  EXPECT_THROW(generate_counterexample(spec), ConstructionFailed);
}

TEST(Gaussian, Basics) {
  const auto x = generate_gaussian(50, 3, 1);
  EXPECT_EQ(x.n(), 50);
  EXPECT_EQ(x.dim(), 3);
  EXPECT_TRUE(is_general_position(x));
  EXPECT_TRUE(x == generate_gaussian(50, 3, 1));
  EXPECT_FALSE(x == generate_gaussian(50, 3, 2));
  EXPECT_THROW(generate_gaussian(5, 4, 1), PreconditionError);
}

TEST(Octagon, OrbitStructure) {
  const auto x = generate_octagon();
  ASSERT_EQ(x.n(), 8);
  EXPECT_EQ(x.label(0), "A");
  EXPECT_TRUE(is_general_position(x, {Arithmetic::Exact}));
  auto orbit_sets = [&](int k) {
    const auto r = ridge_search(x, k, {Strategy::C});
    std::set<std::set<int>> out;
    for (const auto& o : r.orbits) {
      std::set<int> pts;
      for (auto pos : o)
        for (int i : r.halfspaces[pos].plane.indices) pts.insert(i);
      out.insert(pts);
    }
    return out;
  };
  EXPECT_EQ(orbit_sets(1).size(), 1u);
  EXPECT_EQ(orbit_sets(3).size(), 1u);
  EXPECT_EQ(orbit_sets(2), (std::set<std::set<int>>{{0, 2, 4, 6}, {1, 3, 5, 7}}));
  EXPECT_EQ(orbit_sets(4), (std::set<std::set<int>>{{0, 4}, {1, 5}, {2, 6}, {3, 7}}));
  for (int i = 0; i < 8; ++i) {
    const auto p = x.point(i);
    EXPECT_NEAR(p[0] * p[0] + p[1] * p[1], 1.0, 1e-12);
  }
}

TEST(Perturb, BoundedAndDeterministic) {
  const auto x = generate_gaussian(12, 3, 1);
  const auto y = perturb(x, 1e-3, 5);
  EXPECT_TRUE(y == perturb(x, 1e-3, 5));
  for (std::size_t i = 0; i < x.coords().size(); ++i)
    EXPECT_LE(std::fabs(x.coords()[i] - y.coords()[i]), 1e-3);
}

TEST(Csv, RoundTripCounterexample) {
  const auto x = generate_counterexample();
  const auto path = temp_file("counterexample.csv");
  save_points(x, path);
  const auto y = load_points(path);
  EXPECT_TRUE(x == y);
  EXPECT_EQ(x.labels(), y.labels());
  EXPECT_FALSE(fs::exists(path.string() + ".tmp"));
}

TEST(Csv, RoundTripGaussianBitExact) {
  const auto x = generate_gaussian(30, 5, 3);
  const auto y = parse_points(format_points(x));
  ASSERT_EQ(x.coords().size(), y.coords().size());
  for (std::size_t i = 0; i < x.coords().size(); ++i) EXPECT_EQ(x.coords()[i], y.coords()[i]);
}

TEST(Csv, RaggedRowNamesTheRow) {
  const std::string text = "x1,x2\n0,0\n1,0\n0.3\n0,1\n0.5,0.7\n";
  try {
    parse_points(text);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.row(), 4);
    EXPECT_NE(std::string(e.what()).find("row 4"), std::string::npos);
  }
}

TEST(Csv, BadNumberAndHeader) {
  try {
    parse_points("x1,x2\n0,0\n1,abc\n0,1\n2,3\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.row(), 3);
    EXPECT_EQ(e.column(), 2);
  }
  EXPECT_THROW(parse_points("a,b\n0,0\n1,0\n0,1\n2,3\n"), ParseError);
  EXPECT_THROW(parse_points(""), ParseError);
}

TEST(Csv, CollinearPointsAreDegenerate) {
  const auto path = temp_file("collinear.csv");
  write_file_atomic(path, "x1,x2\n0,0\n1,1\n2,2\n5,0\n");
  EXPECT_THROW(load_points(path), DegenerateInput);
  EXPECT_NO_THROW(load_points(path, {.check_general_position = false}));
}

TEST(Csv, MissingFile) {
  EXPECT_THROW(load_points("/nonexistent/points.csv"), IoError);
}

TEST(Csv, FormatDoubleShortest) {
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(-2.0), "-2");
  EXPECT_EQ(std::stod(format_double(1.0 / 3.0)), 1.0 / 3.0);
}
