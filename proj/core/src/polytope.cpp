#include "tukey/polytope.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "tukey/errors.hpp"

namespace tukey::polytope {

// ----------------------------------------------------------------- LP

namespace {

// Dense tableau simplex for  min cost . x  s.t.  T x = rhs, x >= 0, started
// from the artificial basis (last `rows` columns form an identity).
class Tableau {
 public:
  Tableau(int rows, int structural)
      : rows_(rows),
        structural_(structural),
        cols_(structural + rows),
        t_(static_cast<std::size_t>(rows) * (structural + rows), 0.0),
        rhs_(static_cast<std::size_t>(rows), 0.0),
        basis_(static_cast<std::size_t>(rows)) {
    for (int i = 0; i < rows; ++i) {
      at(i, structural + i) = 1.0;
      basis_[i] = structural + i;
    }
  }

  double& at(int r, int c) { return t_[static_cast<std::size_t>(r) * cols_ + c]; }
  double at(int r, int c) const { return t_[static_cast<std::size_t>(r) * cols_ + c]; }
  double& rhs(int r) { return rhs_[r]; }
  int basis(int r) const { return basis_[r]; }
  int rows() const { return rows_; }
  int structural() const { return structural_; }

  void pivot(int r, int e) {
    const double p = at(r, e);
    for (int c = 0; c < cols_; ++c) at(r, c) /= p;
    rhs_[r] /= p;
    for (int i = 0; i < rows_; ++i) {
      if (i == r) continue;
      const double f = at(i, e);
      if (f == 0.0) continue;
      for (int c = 0; c < cols_; ++c) at(i, c) -= f * at(r, c);
      at(i, e) = 0.0;
      rhs_[i] -= f * rhs_[r];
    }
    basis_[r] = e;
  }

  // Runs the simplex with the given column costs; columns with
  // allowed[c] == false never enter. Returns the objective value.
  double optimise(const std::vector<double>& cost, const std::vector<char>& allowed) {
    double cost_scale = 1.0;
    for (double c : cost) cost_scale = std::max(cost_scale, std::fabs(c));
    const double tol = 1e-11 * cost_scale;
    int degenerate_streak = 0;
    std::vector<double> reduced(static_cast<std::size_t>(cols_));
    for (int iter = 0; iter < 200000; ++iter) {
      for (int c = 0; c < cols_; ++c) {
        double z = cost[c];
        for (int i = 0; i < rows_; ++i) z -= cost[basis_[i]] * at(i, c);
        reduced[c] = z;
      }
      const bool bland = degenerate_streak > 30;
      int enter = -1;
      double best = -tol;
      for (int c = 0; c < cols_; ++c) {
        if (!allowed[c] || reduced[c] >= -tol) continue;
        if (bland) {
          enter = c;
          break;
        }
        if (reduced[c] < best) {
          best = reduced[c];
          enter = c;
        }
      }
      if (enter < 0) {
        double obj = 0.0;
        for (int i = 0; i < rows_; ++i) obj += cost[basis_[i]] * rhs_[i];
        return obj;
      }
      int leave = -1;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (int i = 0; i < rows_; ++i) {
        const double a = at(i, enter);
        if (a <= 1e-12) continue;
        const double ratio = std::max(rhs_[i], 0.0) / a;
        if (ratio < best_ratio - 1e-14 ||
            (ratio <= best_ratio + 1e-14 && leave >= 0 && basis_[i] < basis_[leave])) {
          best_ratio = ratio;
          leave = i;
        }
      }
      if (leave < 0) throw NumericalFailure("LP unbounded (dual of a feasible system)");
      degenerate_streak = best_ratio <= 1e-14 ? degenerate_streak + 1 : 0;
      pivot(leave, enter);
    }
    throw NumericalFailure("LP iteration limit reached");
  }

 private:
  int rows_;
  int structural_;
  int cols_;
  std::vector<double> t_;
  std::vector<double> rhs_;
  std::vector<int> basis_;
};

}  // namespace

ChebyshevResult chebyshev_centre(std::span<const Constraint> rows, int dim,
                                 double radius_cap) {
  // Primal: max r  s.t. [a_j, 1] . (x, r) <= b_j,  r <= cap.
  // Dual:   min b . lambda  s.t.  sum_j lambda_j [a_j, 1] = e_r, lambda >= 0.
  const int p = dim + 1;
  const int m = static_cast<int>(rows.size()) + 1;
  Tableau tab(p, m);
  std::vector<double> b(static_cast<std::size_t>(m));
  for (int j = 0; j + 1 < m; ++j) {
    const auto& row = rows[static_cast<std::size_t>(j)];
    if (static_cast<int>(row.a.size()) != dim)
      throw DimensionMismatch("constraint dimension mismatch");
    for (int i = 0; i < dim; ++i) tab.at(i, j) = row.a[i];
    tab.at(dim, j) = 1.0;
    b[j] = row.b;
  }
  tab.at(dim, m - 1) = 1.0;
  b[m - 1] = radius_cap;
  tab.rhs(dim) = 1.0;

  const int cols = m + p;
  std::vector<double> phase1(static_cast<std::size_t>(cols), 0.0);
  for (int i = 0; i < p; ++i) phase1[m + i] = 1.0;
  std::vector<char> allowed(static_cast<std::size_t>(cols), 1);
  if (tab.optimise(phase1, allowed) > 1e-9)
    throw NumericalFailure("Chebyshev LP: dual phase 1 did not reach feasibility");

  // Drive zero-level artificials out of the basis where possible.
  for (int i = 0; i < p; ++i) {
    if (tab.basis(i) < m) continue;
    int best = -1;
    double best_abs = 1e-9;
    for (int c = 0; c < m; ++c)
      if (std::fabs(tab.at(i, c)) > best_abs) {
        best_abs = std::fabs(tab.at(i, c));
        best = c;
      }
    if (best >= 0) tab.pivot(i, best);
  }

  std::vector<double> phase2(static_cast<std::size_t>(cols), 0.0);
  for (int j = 0; j < m; ++j) phase2[j] = b[j];
  for (int i = 0; i < p; ++i) allowed[m + i] = 0;
  tab.optimise(phase2, allowed);

  // Simplex multipliers pi = c_B^T B^{-1}; B^{-1} sits in the artificial
  // columns. They are the optimal primal (x, r).
  std::vector<double> y(static_cast<std::size_t>(p), 0.0);
  for (int i = 0; i < p; ++i)
    for (int k = 0; k < p; ++k) y[i] += phase2[tab.basis(k)] * tab.at(k, m + i);

  ChebyshevResult out;
  out.centre.assign(y.begin(), y.begin() + dim);
  out.radius = y[dim];
  return out;
}

// ----------------------------------------------------------- quickhull

namespace {

struct Facet {
  std::vector<int> v;
  std::vector<int> nb;  // nb[t] shares every vertex of v except v[t]
  Eigen::VectorXd n;
  double off = 0.0;
  std::vector<int> outside;
  bool alive = true;
  int mark = -1;
};

class QuickHull {
 public:
  QuickHull(std::span<const std::vector<double>> pts, int dim, double eps)
      : dim_(dim) {
    pts_.reserve(pts.size());
    double scale = 0.0;
    for (const auto& p : pts) {
      if (static_cast<int>(p.size()) != dim) throw DimensionMismatch("hull point dimension");
      Eigen::VectorXd v(dim);
      for (int i = 0; i < dim; ++i) {
        v[i] = p[i];
        scale = std::max(scale, std::fabs(p[i]));
      }
      pts_.push_back(std::move(v));
    }
    eps_ = eps * std::max(scale, 1e-300);
  }

  std::vector<HullFacet> run() {
    initial_simplex();
    std::vector<int> work;
    for (int f = 0; f < static_cast<int>(facets_.size()); ++f) work.push_back(f);
    int round = 0;
    while (!work.empty()) {
      const int f = work.back();
      work.pop_back();
      if (!facets_[f].alive || facets_[f].outside.empty()) continue;
      add_point(f, ++round, work);
    }
    std::vector<HullFacet> out;
    for (const auto& f : facets_) {
      if (!f.alive) continue;
      HullFacet h;
      h.vertices = f.v;
      h.normal.assign(f.n.data(), f.n.data() + dim_);
      h.offset = f.off;
      out.push_back(std::move(h));
    }
    return out;
  }

 private:
  double dist(const Facet& f, int p) const { return f.n.dot(pts_[p]) - f.off; }

  void set_plane(Facet& f) const {
    Eigen::MatrixXd m(dim_, dim_ - 1);
    for (int r = 1; r < dim_; ++r) m.col(r - 1) = pts_[f.v[r]] - pts_[f.v[0]];
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
    Eigen::MatrixXd q = qr.householderQ();
    f.n = q.col(dim_ - 1);
    f.off = f.n.dot(pts_[f.v[0]]);
    if (f.n.dot(interior_) - f.off > 0) {
      f.n = -f.n;
      f.off = -f.off;
    }
  }

  void initial_simplex() {
    const int n = static_cast<int>(pts_.size());
    if (n < dim_ + 1) throw NumericalFailure("too few points for a full-dimensional hull");
    std::vector<int> chosen;
    int first = 0;
    for (int i = 1; i < n; ++i)
      if (pts_[i][0] < pts_[first][0]) first = i;
    chosen.push_back(first);
    std::vector<Eigen::VectorXd> basis;  // orthonormal directions spanned so far
    while (static_cast<int>(chosen.size()) < dim_ + 1) {
      int best = -1;
      double best_d = -1.0;
      Eigen::VectorXd best_r;
      for (int i = 0; i < n; ++i) {
        Eigen::VectorXd r = pts_[i] - pts_[first];
        for (const auto& e : basis) r -= e.dot(r) * e;
        const double d = r.norm();
        if (d > best_d) {
          best_d = d;
          best = i;
          best_r = r;
        }
      }
      if (best_d <= eps_ * 10)
        throw NumericalFailure("hull points do not span the full dimension");
      basis.push_back(best_r / best_d);
      chosen.push_back(best);
    }
    interior_ = Eigen::VectorXd::Zero(dim_);
    for (int c : chosen) interior_ += pts_[c];
    interior_ /= static_cast<double>(chosen.size());

    for (int i = 0; i <= dim_; ++i) {
      Facet f;
      for (int j = 0; j <= dim_; ++j)
        if (j != i) {
          f.v.push_back(chosen[j]);
          f.nb.push_back(j);
        }
      set_plane(f);
      facets_.push_back(std::move(f));
    }
    std::vector<char> in_simplex(pts_.size(), 0);
    for (int c : chosen) in_simplex[c] = 1;
    for (int p = 0; p < n; ++p) {
      if (in_simplex[p]) continue;
      for (auto& f : facets_)
        if (dist(f, p) > eps_) {
          f.outside.push_back(p);
          break;
        }
    }
  }

  void add_point(int start, int round, std::vector<int>& work) {
    Facet& sf = facets_[start];
    int apex = sf.outside.front();
    double far = dist(sf, apex);
    for (int p : sf.outside) {
      const double d = dist(sf, p);
      if (d > far) {
        far = d;
        apex = p;
      }
    }

    std::vector<int> visible{start};
    facets_[start].mark = round;
    std::vector<std::pair<int, int>> horizon;  // (visible facet, slot)
    for (std::size_t q = 0; q < visible.size(); ++q) {
      const int f = visible[q];
      for (int t = 0; t < dim_; ++t) {
        const int g = facets_[f].nb[t];
        if (facets_[g].mark == round) continue;
        if (dist(facets_[g], apex) > eps_) {
          facets_[g].mark = round;
          visible.push_back(g);
        } else {
          horizon.emplace_back(f, t);
        }
      }
    }

    std::map<std::vector<int>, std::pair<int, int>> open_ridges;
    std::vector<int> created;
    for (auto [f, t] : horizon) {
      Facet nf;
      nf.v = facets_[f].v;
      nf.v[t] = apex;
      nf.nb.assign(static_cast<std::size_t>(dim_), -1);
      const int g = facets_[f].nb[t];
      nf.nb[t] = g;
      set_plane(nf);
      const int id = static_cast<int>(facets_.size());
      for (int s = 0; s < dim_; ++s)
        if (facets_[g].nb[s] == f) facets_[g].nb[s] = id;
      for (int s = 0; s < dim_; ++s) {
        if (s == t) continue;
        std::vector<int> ridge;
        for (int u = 0; u < dim_; ++u)
          if (u != s) ridge.push_back(nf.v[u]);
        std::sort(ridge.begin(), ridge.end());
        auto it = open_ridges.find(ridge);
        if (it == open_ridges.end()) {
          open_ridges.emplace(std::move(ridge), std::make_pair(id, s));
        } else {
          auto [other, os] = it->second;
          nf.nb[s] = other;
          facets_[other].nb[os] = id;
          open_ridges.erase(it);
        }
      }
      facets_.push_back(std::move(nf));
      created.push_back(id);
    }
    if (!open_ridges.empty()) throw NumericalFailure("quickhull: horizon is not closed");

    std::vector<int> orphans;
    for (int f : visible) {
      facets_[f].alive = false;
      for (int p : facets_[f].outside)
        if (p != apex) orphans.push_back(p);
      facets_[f].outside.clear();
    }
    for (int p : orphans) {
      for (int id : created)
        if (dist(facets_[id], p) > eps_) {
          facets_[id].outside.push_back(p);
          break;
        }
    }
    for (int id : created)
      if (!facets_[id].outside.empty()) work.push_back(id);
  }

  int dim_;
  double eps_ = 0.0;
  std::vector<Eigen::VectorXd> pts_;
  std::vector<Facet> facets_;
  Eigen::VectorXd interior_;
};

}  // namespace

std::vector<HullFacet> convex_hull(std::span<const std::vector<double>> points,
                                   int dim, double eps) {
  return QuickHull(points, dim, eps).run();
}

}  // namespace tukey::polytope
