#include "tukey/region.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "tukey/combinatorics.hpp"
#include "tukey/errors.hpp"
#include "tukey/exact.hpp"
#include "tukey/polytope.hpp"
#include "tukey/search.hpp"

namespace tukey {

std::string_view to_string(RegionStatus s) {
  switch (s) {
    case RegionStatus::FullDim: return "FullDim";
    case RegionStatus::LowerDim: return "LowerDim";
    case RegionStatus::Empty: return "Empty";
  }
  return "?";
}

bool RegionPolytope::contains(std::span<const double> x, double tol) const {
  if (status == RegionStatus::Empty) return false;
  for (const auto& h : facet_halfspaces)
    if (!h.contains(x, tol)) return false;
  return true;
}

Point RegionPolytope::vertex_mean() const {
  std::vector<double> m(static_cast<std::size_t>(dim), 0.0);
  for (const auto& v : vertices)
    for (int i = 0; i < dim; ++i) m[i] += v[i];
  if (!vertices.empty())
    for (auto& x : m) x /= static_cast<double>(vertices.size());
  return Point(std::move(m));
}

namespace {

constexpr double kRadiusTol = 1e-9;

std::vector<Halfspace> sorted_input(std::span<const Halfspace> hs, int dim) {
  if (hs.empty()) throw PreconditionError("cannot intersect an empty halfspace set");
  std::vector<Halfspace> out(hs.begin(), hs.end());
  for (const auto& h : out)
    if (static_cast<int>(h.plane.normal.size()) != dim)
      throw DimensionMismatch("halfspace dimension does not match d");
  std::sort(out.begin(), out.end(), key_less);
  return out;
}

std::vector<polytope::Constraint> constraints_of(std::span<const Halfspace> hs) {
  std::vector<polytope::Constraint> rows;
  rows.reserve(hs.size());
  for (const auto& h : hs) {
    const double s = h.side == Side::Plus ? -1.0 : 1.0;
    polytope::Constraint c;
    for (double v : h.plane.normal) c.a.push_back(s * v);
    c.b = s * h.plane.offset;
    rows.push_back(std::move(c));
  }
  return rows;
}

double scale_of(std::span<const Halfspace> hs) {
  double s = 1.0;
  for (const auto& h : hs) s = std::max(s, std::fabs(h.plane.offset));
  return s;
}

int affine_rank(const std::vector<const Point*>& pts, int dim, double tol) {
  if (pts.size() < 2) return 0;
  Eigen::MatrixXd m(dim, static_cast<Eigen::Index>(pts.size() - 1));
  for (std::size_t j = 1; j < pts.size(); ++j)
    for (int i = 0; i < dim; ++i) m(i, static_cast<Eigen::Index>(j - 1)) = (*pts[j])[i] - (*pts[0])[i];
  Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
  lu.setThreshold(tol);
  return static_cast<int>(lu.rank());
}

std::vector<Point> dedupe_vertices(std::vector<Point> raw, double tol) {
  std::vector<Point> kept;
  for (auto& v : raw) {
    bool dup = false;
    for (const auto& k : kept) {
      double d2 = 0.0;
      for (int i = 0; i < v.dim(); ++i) d2 += (v[i] - k[i]) * (v[i] - k[i]);
      if (d2 <= tol * tol) {
        dup = true;
        break;
      }
    }
    if (!dup) kept.push_back(std::move(v));
  }
  std::sort(kept.begin(), kept.end(), [](const Point& a, const Point& b) {
    return std::lexicographical_compare(a.coords().begin(), a.coords().end(),
                                        b.coords().begin(), b.coords().end());
  });
  return kept;
}

// Status from the vertex set, then facet halfspaces.
void finish(RegionPolytope& r, const std::vector<Halfspace>& hs, double scale) {
  const int d = r.dim;
  const double tol = kVertexTol * scale;
  std::vector<const Point*> all;
  for (const auto& v : r.vertices) all.push_back(&v);
  if (r.vertices.empty()) {
    r.status = RegionStatus::Empty;
    return;
  }
  r.status = affine_rank(all, d, 1e-9 * scale) == d ? RegionStatus::FullDim
                                                    : RegionStatus::LowerDim;
  for (std::size_t j = 0; j < hs.size(); ++j) {
    std::vector<const Point*> tight;
    for (const auto& v : r.vertices)
      if (std::fabs(hs[j].margin(v.coords())) <= tol) tight.push_back(&v);
    const bool facet = r.status == RegionStatus::FullDim
                           ? static_cast<int>(tight.size()) >= d &&
                                 affine_rank(tight, d, 1e-9 * scale) >= d - 1
                           : !tight.empty();
    if (facet) {
      r.facet_halfspaces.push_back(hs[j]);
      r.facet_rows.push_back(j);
    }
  }
}

RegionPolytope bruteforce_sorted(const std::vector<Halfspace>& hs, int dim, int level) {
  RegionPolytope r;
  r.level = level;
  r.dim = dim;
  const double scale = scale_of(hs);
  const double tol = kVertexTol * scale;

  // Distinct boundary hyperplanes.
  std::vector<const Hyperplane*> planes;
  for (const auto& h : hs)
    if (planes.empty() || planes.back()->indices != h.plane.indices) planes.push_back(&h.plane);

  std::vector<Point> raw;
  Eigen::MatrixXd a(dim, dim);
  Eigen::VectorXd b(dim);
  for_each_combination(static_cast<int>(planes.size()), dim, [&](std::span<const int> pick) {
    for (int i = 0; i < dim; ++i) {
      for (int j = 0; j < dim; ++j) a(i, j) = planes[pick[i]]->normal[j];
      b[i] = planes[pick[i]]->offset;
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
    lu.setThreshold(1e-10);
    if (lu.rank() < dim) return true;
    const Eigen::VectorXd x = lu.solve(b);
    std::vector<double> v(x.data(), x.data() + dim);
    for (const auto& h : hs)
      if (!h.contains(v, tol)) return true;
    raw.emplace_back(std::move(v));
    return true;
  });
  r.vertices = dedupe_vertices(std::move(raw), tol);
  finish(r, hs, scale);
  if (r.status == RegionStatus::FullDim) {
    const Point m = r.vertex_mean();
    r.interior.assign(m.coords().begin(), m.coords().end());
  }
  return r;
}

RegionPolytope hull_based(const std::vector<Halfspace>& hs, int dim, int level,
                          const polytope::ChebyshevResult& cheb) {
  RegionPolytope r;
  r.level = level;
  r.dim = dim;
  const double scale = scale_of(hs);
  const auto rows = constraints_of(hs);

  // Polar dual about the interior point: facet j of the region maps to
  // q_j = a_j / (b_j - a_j . x*); hull facets of the q_j map back to vertices.
  std::vector<std::vector<double>> dual;
  dual.reserve(rows.size());
  for (const auto& c : rows) {
    double slack = c.b;
    for (int i = 0; i < dim; ++i) slack -= c.a[i] * cheb.centre[i];
    std::vector<double> q(static_cast<std::size_t>(dim));
    for (int i = 0; i < dim; ++i) q[i] = c.a[i] / slack;
    dual.push_back(std::move(q));
  }
  const auto facets = polytope::convex_hull(dual, dim);
  std::vector<Point> raw;
  raw.reserve(facets.size());
  for (const auto& f : facets) {
    if (f.offset <= 1e-12) throw NumericalFailure("region is unbounded or degenerate");
    std::vector<double> v(static_cast<std::size_t>(dim));
    for (int i = 0; i < dim; ++i) v[i] = cheb.centre[i] + f.normal[i] / f.offset;
    raw.emplace_back(std::move(v));
  }
  r.vertices = dedupe_vertices(std::move(raw), kVertexTol * scale);
  for (const auto& v : r.vertices)
    for (const auto& h : hs)
      if (!h.contains(v.coords(), kVertexTol * scale))
        throw NumericalFailure("region vertex violates a halfspace");
  finish(r, hs, scale);
  r.interior = cheb.centre;
  r.inradius = cheb.radius;
  return r;
}

std::vector<exact::Rational> exact_plane(const Dataset& data, const Hyperplane& h,
                                         exact::Rational& offset) {
  std::vector<exact::RationalVector> pts;
  for (int idx : h.indices) pts.push_back(exact::to_rational(data.point(idx)));
  auto c = exact::cofactor_normal(pts);
  // Orient like the stored float normal.
  double agree = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) agree += c[i].get_d() * h.normal[i];
  if (agree < 0)
    for (auto& x : c) x = -x;
  offset = exact::dot(c, pts.front());
  return c;
}

}  // namespace

RegionPolytope intersect_halfspaces_bruteforce(std::span<const Halfspace> halfspaces,
                                               int dim, int level) {
  return bruteforce_sorted(sorted_input(halfspaces, dim), dim, level);
}

RegionPolytope intersect_halfspaces(std::span<const Halfspace> halfspaces, int dim,
                                    int level) {
  const auto hs = sorted_input(halfspaces, dim);
  const auto rows = constraints_of(hs);
  const auto cheb = polytope::chebyshev_centre(rows, dim, scale_of(hs));
  if (cheb.radius < -kRadiusTol) {
    RegionPolytope r;
    r.level = level;
    r.dim = dim;
    return r;
  }
  if (cheb.radius <= kRadiusTol) return bruteforce_sorted(hs, dim, level);
  try {
    return hull_based(hs, dim, level, cheb);
  } catch (const NumericalFailure&) {
    return bruteforce_sorted(hs, dim, level);
  }
}

RegionStatus classify_intersection(const Dataset& data, std::span<const Halfspace> halfspaces,
                                   const Predicates&) {
  if (halfspaces.empty()) throw PreconditionError("cannot intersect an empty halfspace set");
  const auto rows = constraints_of(halfspaces);
  const auto cheb = polytope::chebyshev_centre(rows, data.dim(), scale_of(halfspaces));
  if (cheb.radius < -kRadiusTol) return RegionStatus::Empty;
  if (cheb.radius <= kRadiusTol) return RegionStatus::LowerDim;
  return RegionStatus::FullDim;
}

int vertex_position(const Dataset& data, std::span<const Halfspace> inner,
                    std::span<const double> vertex, std::span<const Halfspace> outer) {
  constexpr double kTrust = 1e-6;
  const int d = data.dim();
  double lowest = std::numeric_limits<double>::infinity();
  for (const auto& h : outer) lowest = std::min(lowest, h.margin(vertex));
  if (lowest > kTrust) return 1;
  if (lowest < -kTrust) return -1;

  // Rebuild the vertex from d tight inner hyperplanes with independent normals.
  std::vector<std::pair<double, const Halfspace*>> cand;
  for (const auto& h : inner) cand.emplace_back(std::fabs(h.margin(vertex)), &h);
  std::sort(cand.begin(), cand.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<const Hyperplane*> picked;
  Eigen::MatrixXd normals(d, 0);
  for (const auto& [dist, h] : cand) {
    if (dist > kTrust || static_cast<int>(picked.size()) == d) break;
    if (!picked.empty() && picked.back()->indices == h->plane.indices) continue;
    Eigen::MatrixXd trial(d, normals.cols() + 1);
    trial << normals, Eigen::Map<const Eigen::VectorXd>(h->plane.normal.data(), d);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(trial);
    lu.setThreshold(1e-10);
    if (lu.rank() == trial.cols()) {
      normals = trial;
      picked.push_back(&h->plane);
    }
  }
  if (static_cast<int>(picked.size()) < d)
    throw NumericalFailure("vertex is not determined by tight hyperplanes");
  exact::RationalMatrix a;
  exact::RationalVector b;
  for (const Hyperplane* p : picked) {
    exact::Rational off;
    a.push_back(exact_plane(data, *p, off));
    b.push_back(off);
  }
  const auto x = exact::solve(std::move(a), std::move(b));
  if (!x) throw NumericalFailure("singular vertex system");

  int result = 1;
  for (const auto& h : outer) {
    const double m = h.margin(vertex);
    if (m > kTrust) continue;
    if (m < -kTrust) return -1;
    exact::Rational off;
    const auto c = exact_plane(data, h.plane, off);
    int s = exact::sign(exact::dot(c, *x) - off);
    if (h.side == Side::Minus) s = -s;
    if (s < 0) return -1;
    if (s == 0) result = 0;
  }
  return result;
}

bool strictly_nested(const Dataset& data, const RegionPolytope& inner_region,
                     std::span<const Halfspace> inner, std::span<const Halfspace> outer) {
  for (const auto& v : inner_region.vertices)
    if (vertex_position(data, inner, v.coords(), outer) != 1) return false;
  return true;
}

MedianResult tukey_median(const Dataset& data, const Predicates& pred) {
  SearchEngine engine(data, pred);
  const auto levels = engine.compute_all_regions(data.n() / 2);
  MedianResult out;
  for (const auto& lv : levels) {
    if (lv.skipped || lv.halfspaces.empty()) break;
    auto region = intersect_halfspaces(lv.halfspaces, data.dim(), lv.level);
    if (region.status == RegionStatus::Empty) break;
    out.k_max = lv.level;
    out.region = std::move(region);
  }
  if (out.k_max == 0) throw NumericalFailure("no non-empty central region");
  out.barycentre = out.region.vertex_mean();
  return out;
}

}  // namespace tukey
