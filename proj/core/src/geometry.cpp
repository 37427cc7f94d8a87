#include "tukey/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tukey/combinatorics.hpp"
#include "tukey/errors.hpp"
#include "tukey/exact.hpp"

namespace tukey {

std::string_view to_string(Arithmetic mode) {
  return mode == Arithmetic::Exact ? "exact" : "float";
}

Arithmetic parse_arithmetic(std::string_view text) {
  if (text == "float") return Arithmetic::Float;
  if (text == "exact") return Arithmetic::Exact;
  throw PreconditionError("arithmetic mode must be 'float' or 'exact', got '" +
                          std::string(text) + "'");
}

// ---------------------------------------------------------------- Point

Point::Point(std::vector<double> coords) : coords_(std::move(coords)) {}

// -------------------------------------------------------------- Dataset

Dataset::Dataset(int dim, std::vector<double> coords,
                 std::vector<std::string> labels)
    : dim_(dim), labels_(std::move(labels)) {
  if (dim < 2 || dim > kMaxDim)
    throw PreconditionError("dimension must be in [2, " + std::to_string(kMaxDim) +
                            "], got " + std::to_string(dim));
  if (coords.size() % static_cast<std::size_t>(dim) != 0)
    throw PreconditionError("coordinate count is not a multiple of the dimension");
  n_ = static_cast<int>(coords.size() / static_cast<std::size_t>(dim));
  if (n_ <= dim + 1)
    throw PreconditionError("need n > d + 1 points, got n = " + std::to_string(n_) +
                            ", d = " + std::to_string(dim));
  for (double v : coords)
    if (!std::isfinite(v)) throw PreconditionError("non-finite coordinate");
  if (!labels_.empty() && static_cast<int>(labels_.size()) != n_)
    throw PreconditionError("label count does not match point count");
  coords_ = std::make_shared<const std::vector<double>>(std::move(coords));
}

Dataset Dataset::from_points(std::span<const Point> points,
                             std::vector<std::string> labels) {
  if (points.empty()) throw PreconditionError("empty point list");
  const int dim = points.front().dim();
  std::vector<double> flat;
  flat.reserve(points.size() * static_cast<std::size_t>(dim));
  for (const auto& p : points) {
    if (p.dim() != dim) throw PreconditionError("points of mixed dimension");
    flat.insert(flat.end(), p.coords().begin(), p.coords().end());
  }
  return Dataset(dim, std::move(flat), std::move(labels));
}

std::string Dataset::label(int i) const {
  if (labels_.empty()) return "#" + std::to_string(i);
  return labels_[static_cast<std::size_t>(i)];
}

std::optional<int> Dataset::index_of_label(std::string_view label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return static_cast<int>(i);
  return std::nullopt;
}

Point Dataset::barycentre() const {
  std::vector<double> c(static_cast<std::size_t>(dim_), 0.0);
  for (int i = 0; i < n_; ++i) {
    auto p = point(i);
    for (int j = 0; j < dim_; ++j) c[j] += p[j];
  }
  for (auto& v : c) v /= n_;
  return Point(std::move(c));
}

Dataset Dataset::translated(std::span<const double> shift) const {
  if (static_cast<int>(shift.size()) != dim_)
    throw DimensionMismatch("shift dimension does not match dataset");
  std::vector<double> out(*coords_);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += shift[i % dim_];
  return Dataset(dim_, std::move(out), labels_);
}

// ----------------------------------------------------------- Hyperplane

double Hyperplane::signed_distance(std::span<const double> y) const {
  double s = -offset;
  for (std::size_t i = 0; i < normal.size(); ++i) s += normal[i] * y[i];
  return s;
}

double Halfspace::margin(std::span<const double> y) const {
  const double s = plane.signed_distance(y);
  return side == Side::Plus ? s : -s;
}

// ------------------------------------------------------- PlaneEvaluator

namespace {

// Determinant and permanent of absolute values of the k x k submatrix made
// of rows [row, row + k) and the given columns, by Laplace expansion. The
// permanent bounds the rounding error of the determinant.
std::pair<double, double> laplace(const std::vector<std::vector<double>>& m,
                                  int row, std::span<const int> cols) {
  if (cols.size() == 1) {
    const double v = m[row][cols[0]];
    return {v, std::fabs(v)};
  }
  double det = 0.0, perm = 0.0;
  int sub[kMaxDim];
  for (std::size_t j = 0; j < cols.size(); ++j) {
    const double a = m[row][cols[j]];
    if (a == 0.0) continue;
    int w = 0;
    for (std::size_t t = 0; t < cols.size(); ++t)
      if (t != j) sub[w++] = cols[t];
    auto [d, p] = laplace(m, row + 1, std::span<const int>(sub, cols.size() - 1));
    det += (j % 2 == 0 ? a : -a) * d;
    perm += std::fabs(a) * p;
  }
  return {det, perm};
}

constexpr double kUnitRoundoff = 1.1102230246251565e-16;  // 2^-53

}  // namespace

struct PlaneEvaluator::ExactData {
  exact::RationalVector cofactor;  // canonical sign applied
  exact::RationalVector base;
};

PlaneEvaluator::PlaneEvaluator(std::span<const std::span<const double>> points,
                               const Predicates& pred)
    : pred_(pred), dim_(static_cast<int>(points.size())) {
  const int d = dim_;
  if (d < 2) throw PreconditionError("hyperplane needs at least two points");
  for (const auto& p : points)
    if (static_cast<int>(p.size()) != d)
      throw DimensionMismatch("hyperplane needs d points in R^d");

  base_.assign(points[0].begin(), points[0].end());
  if (pred_.mode == Arithmetic::Exact) {
    points_.reserve(points.size());
    for (const auto& p : points) points_.emplace_back(p.begin(), p.end());
  }

  std::vector<std::vector<double>> diff(static_cast<std::size_t>(d - 1),
                                        std::vector<double>(static_cast<std::size_t>(d)));
  for (int r = 1; r < d; ++r)
    for (int c = 0; c < d; ++c) diff[r - 1][c] = points[r][c] - points[0][c];

  cofactor_.resize(static_cast<std::size_t>(d));
  cofactor_abs_.resize(static_cast<std::size_t>(d));
  int cols[kMaxDim];
  for (int i = 0; i < d; ++i) {
    int w = 0;
    for (int c = 0; c < d; ++c)
      if (c != i) cols[w++] = c;
    auto [det, perm] = laplace(diff, 0, std::span<const int>(cols, d - 1));
    const bool negate = (d - 1 + i) % 2 != 0;
    cofactor_[i] = negate ? -det : det;
    cofactor_abs_[i] = perm;
  }

  double norm2 = 0.0, abs_norm2 = 0.0;
  for (int i = 0; i < d; ++i) {
    norm2 += cofactor_[i] * cofactor_[i];
    abs_norm2 += cofactor_abs_[i] * cofactor_abs_[i];
  }
  const double gamma = (4.0 * d + 8.0) * kUnitRoundoff;

  bool need_exact_cofactor = false;
  if (pred_.mode == Arithmetic::Exact) {
    need_exact_cofactor = true;
    for (int i = 0; i < d; ++i)
      if (std::fabs(cofactor_[i]) > 2.0 * gamma * cofactor_abs_[i]) {
        need_exact_cofactor = false;
        break;
      }
  } else if (norm2 == 0.0 || std::sqrt(norm2) <= 1e-12 * std::sqrt(abs_norm2)) {
    throw DegenerateInput("points defining the hyperplane are affinely dependent");
  }

  if (need_exact_cofactor) {
    filter_valid_ = false;
    exact_ = std::make_unique<ExactData>();
    std::vector<exact::RationalVector> q;
    for (const auto& p : points_) q.push_back(exact::to_rational(p));
    exact_->cofactor = exact::cofactor_normal(q);
    exact_->base = q[0];
    bool all_zero = true;
    for (const auto& c : exact_->cofactor)
      if (sgn(c) != 0) all_zero = false;
    if (all_zero)
      throw DegenerateInput("points defining the hyperplane are affinely dependent");
    cofactor_ = exact::to_double(exact_->cofactor);
    norm2 = 0.0;
    for (double c : cofactor_) norm2 += c * c;
  }

  // Canonical orientation: the largest-magnitude coordinate is positive.
  std::size_t arg = 0;
  for (std::size_t i = 1; i < cofactor_.size(); ++i)
    if (std::fabs(cofactor_[i]) > std::fabs(cofactor_[arg])) arg = i;
  orientation_ = cofactor_[arg] < 0 ? -1 : 1;
  if (orientation_ < 0) {
    for (auto& c : cofactor_) c = -c;
    if (exact_)
      for (auto& c : exact_->cofactor) c = -c;
  }

  norm_ = std::sqrt(norm2);
  normal_.resize(static_cast<std::size_t>(d));
  offset_ = 0.0;
  for (int i = 0; i < d; ++i) {
    normal_[i] = cofactor_[i] / norm_;
    offset_ += normal_[i] * base_[i];
  }
}

PlaneEvaluator::~PlaneEvaluator() = default;
PlaneEvaluator::PlaneEvaluator(PlaneEvaluator&&) noexcept = default;
PlaneEvaluator& PlaneEvaluator::operator=(PlaneEvaluator&&) noexcept = default;

double PlaneEvaluator::signed_distance(std::span<const double> x) const {
  double s = 0.0;
  for (int i = 0; i < dim_; ++i) s += normal_[i] * (x[i] - base_[i]);
  return s;
}

int PlaneEvaluator::exact_sign(std::span<const double> x) const {
  if (!exact_) {
    exact_ = std::make_unique<ExactData>();
    std::vector<exact::RationalVector> q;
    for (const auto& p : points_) q.push_back(exact::to_rational(p));
    exact_->cofactor = exact::cofactor_normal(q);
    if (orientation_ < 0)
      for (auto& c : exact_->cofactor) c = -c;
    exact_->base = q[0];
  }
  exact::Rational v = 0;
  for (int i = 0; i < dim_; ++i)
    v += exact_->cofactor[i] * (exact::Rational(x[i]) - exact_->base[i]);
  return sgn(v);
}

int PlaneEvaluator::side_or_zero(std::span<const double> x) const {
  if (pred_.mode == Arithmetic::Float) {
    const double s = signed_distance(x);
    if (std::fabs(s) <= pred_.eps) return 0;
    return s > 0 ? 1 : -1;
  }
  // Static filter: |computed - exact| <= gamma * sum |C_i| |x_i - p0_i|.
  double v = 0.0, bound = 0.0;
  for (int i = 0; i < dim_; ++i) {
    const double dx = x[i] - base_[i];
    v += cofactor_[i] * dx;
    bound += cofactor_abs_[i] * std::fabs(dx);
  }
  bound *= (6.0 * dim_ + 10.0) * kUnitRoundoff;
  if (filter_valid_) {
    if (v > bound) return 1;
    if (v < -bound) return -1;
  }
  return exact_sign(x);
}

int PlaneEvaluator::side(std::span<const double> x) const {
  const int s = side_or_zero(x);
  if (s == 0)
    throw DegenerateInput(pred_.mode == Arithmetic::Float
                              ? "point within tolerance of a hyperplane"
                              : "point lies exactly on a hyperplane");
  return s;
}

// ----------------------------------------------------------- operations

namespace {

std::vector<int> checked_tuple(const Dataset& data, std::span<const int> indices) {
  if (static_cast<int>(indices.size()) != data.dim())
    throw PreconditionError("a hyperplane needs exactly d point indices");
  std::vector<int> sorted(indices.begin(), indices.end());
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] < 0 || sorted[i] >= data.n())
      throw PreconditionError("point index out of range");
    if (i > 0 && sorted[i] == sorted[i - 1])
      throw PreconditionError("duplicate point index");
  }
  return sorted;
}

PlaneEvaluator evaluator_for(const Dataset& data, std::span<const int> sorted,
                             const Predicates& pred) {
  std::span<const double> pts[kMaxDim];
  for (std::size_t i = 0; i < sorted.size(); ++i) pts[i] = data.point(sorted[i]);
  return PlaneEvaluator(std::span<const std::span<const double>>(pts, sorted.size()),
                        pred);
}

}  // namespace

Hyperplane hyperplane_through(const Dataset& data, std::span<const int> indices,
                              const Predicates& pred) {
  auto sorted = checked_tuple(data, indices);
  PlaneEvaluator ev = evaluator_for(data, sorted, pred);
  return Hyperplane{std::move(sorted), ev.normal(), ev.offset()};
}

std::vector<int> classify_points(const Dataset& data, const Hyperplane& h,
                                 const Predicates& pred) {
  const auto sorted = checked_tuple(data, h.indices);
  PlaneEvaluator ev = evaluator_for(data, sorted, pred);
  std::vector<int> signs(static_cast<std::size_t>(data.n()), 0);
  std::size_t next = 0;
  for (int i = 0; i < data.n(); ++i) {
    if (next < sorted.size() && sorted[next] == i) {
      ++next;
      continue;
    }
    signs[i] = ev.side(data.point(i));
  }
  return signs;
}

SideCounts side_counts(const Dataset& data, const Hyperplane& h,
                       const Predicates& pred) {
  SideCounts out;
  for (int s : classify_points(data, h, pred)) {
    if (s < 0) ++out.neg;
    if (s > 0) ++out.pos;
  }
  return out;
}

bool is_general_position(const Dataset& data, const Predicates& pred) {
  const int d = data.dim();
  bool ok = true;
  for_each_combination(data.n(), d, [&](std::span<const int> tuple) {
    try {
      PlaneEvaluator ev = evaluator_for(data, tuple, pred);
      // Each (d+1)-subset is checked once: as its first d indices + last.
      for (int j = tuple.back() + 1; j < data.n(); ++j) {
        if (ev.side_or_zero(data.point(j)) == 0) {
          ok = false;
          return false;
        }
      }
    } catch (const DegenerateInput&) {
      ok = false;
      return false;
    }
    return true;
  });
  return ok;
}

Halfspace make_halfspace(const Dataset& data, const Hyperplane& h, Side side,
                         const Predicates& pred) {
  const auto signs = classify_points(data, h, pred);
  Halfspace out{h, side, {}};
  // Plus keeps {<y,n> >= offset}: points strictly on the Minus side are cut.
  const int cut = side == Side::Plus ? -1 : 1;
  for (int i = 0; i < data.n(); ++i)
    if (signs[i] == cut) out.cutoff.push_back(i);
  return out;
}

std::pair<Halfspace, Halfspace> halfspaces_of(const Dataset& data,
                                              const Hyperplane& h,
                                              const Predicates& pred) {
  const auto signs = classify_points(data, h, pred);
  Halfspace plus{h, Side::Plus, {}};
  Halfspace minus{h, Side::Minus, {}};
  for (int i = 0; i < data.n(); ++i) {
    if (signs[i] < 0) plus.cutoff.push_back(i);
    if (signs[i] > 0) minus.cutoff.push_back(i);
  }
  return {std::move(plus), std::move(minus)};
}

std::string format_halfspace(const Halfspace& h) {
  std::string out = join_indices(h.plane.indices);
  out += '|';
  out += side_char(h.side);
  out += '|';
  out += join_indices(h.cutoff);
  return out;
}

}  // namespace tukey
