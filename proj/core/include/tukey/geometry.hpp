#pragma once

// Core value types (points, datasets, observational hyperplanes and
// halfspaces) and the sign predicates everything else is built on.
//
// Two predicate backends share one interface:
//   * Float: signed distances against a unit normal, with an absolute
//     tolerance band [-eps, eps] that is reported as DegenerateInput.
//   * Exact: signs of orientation determinants over the rationals that the
//     stored IEEE doubles represent. A floating-point filter decides the easy
//     cases; GMP rationals decide the rest.

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tukey {

enum class Arithmetic { Float, Exact };

std::string_view to_string(Arithmetic mode);
/// Accepts "float" or "exact"; throws PreconditionError otherwise.
Arithmetic parse_arithmetic(std::string_view text);

struct Predicates {
  Arithmetic mode = Arithmetic::Float;
  double eps = 1e-9;
};

inline constexpr int kMaxDim = 8;

class Point {
 public:
  Point() = default;
  explicit Point(std::vector<double> coords);

  int dim() const noexcept { return static_cast<int>(coords_.size()); }
  double operator[](int i) const { return coords_[static_cast<std::size_t>(i)]; }
  double& operator[](int i) { return coords_[static_cast<std::size_t>(i)]; }
  std::span<const double> coords() const noexcept { return coords_; }
  operator std::span<const double>() const noexcept { return coords_; }

  friend bool operator==(const Point&, const Point&) = default;

 private:
  std::vector<double> coords_;
};

/// Immutable list of n points in R^d. Point indices are the identity used by
/// every other module.
class Dataset {
 public:
  /// `coords` is row-major, n * dim values. Requires 2 <= dim <= kMaxDim,
  /// n > dim + 1 and finite coordinates. General position is NOT checked
  /// here (see is_general_position()).
  Dataset(int dim, std::vector<double> coords,
          std::vector<std::string> labels = {});

  static Dataset from_points(std::span<const Point> points,
                             std::vector<std::string> labels = {});

  int n() const noexcept { return n_; }
  int dim() const noexcept { return dim_; }

  std::span<const double> point(int i) const {
    return std::span<const double>(coords_->data() + static_cast<std::size_t>(i) * dim_,
                                   static_cast<std::size_t>(dim_));
  }
  std::span<const double> coords() const noexcept { return *coords_; }

  const std::vector<std::string>& labels() const noexcept { return labels_; }
  /// Label of point i, or "#i" when the dataset is unlabelled.
  std::string label(int i) const;
  std::optional<int> index_of_label(std::string_view label) const;

  Point barycentre() const;
  Dataset translated(std::span<const double> shift) const;

  friend bool operator==(const Dataset& a, const Dataset& b) {
    return a.dim_ == b.dim_ && *a.coords_ == *b.coords_;
  }

 private:
  int dim_ = 0;
  int n_ = 0;
  std::shared_ptr<const std::vector<double>> coords_;
  std::vector<std::string> labels_;
};

/// Sorted (d-1)-tuple of point indices.
struct Ridge {
  std::vector<int> indices;

  friend auto operator<=>(const Ridge&, const Ridge&) = default;
};

/// Affine hull of d data points: {y : <y, normal> = offset} with a unit
/// normal whose largest-magnitude coordinate is positive.
struct Hyperplane {
  std::vector<int> indices;
  std::vector<double> normal;
  double offset = 0.0;

  double signed_distance(std::span<const double> y) const;
};

/// Plus selects the closed halfspace {<y, normal> >= offset}, Minus the
/// closed halfspace {<y, normal> <= offset}.
enum class Side : std::int8_t { Minus = -1, Plus = 1 };

inline Side opposite(Side s) { return s == Side::Plus ? Side::Minus : Side::Plus; }
inline char side_char(Side s) { return s == Side::Plus ? '+' : '-'; }

/// Identity of an observational halfspace: sorted defining indices + side.
struct HalfspaceKey {
  std::vector<int> indices;
  Side side = Side::Plus;

  friend auto operator<=>(const HalfspaceKey&, const HalfspaceKey&) = default;
};

struct Halfspace {
  Hyperplane plane;
  Side side = Side::Plus;
  std::vector<int> cutoff;  // sorted indices strictly outside

  int level() const noexcept { return static_cast<int>(cutoff.size()) + 1; }
  HalfspaceKey key() const { return {plane.indices, side}; }

  /// Positive inside, negative outside; Euclidean distance to the boundary.
  double margin(std::span<const double> y) const;
  /// Closed membership with an absolute slack.
  bool contains(std::span<const double> y, double tol = 0.0) const {
    return margin(y) >= -tol;
  }
};

inline bool key_less(const Halfspace& a, const Halfspace& b) {
  return a.key() < b.key();
}

struct SideCounts {
  int neg = 0;  // strictly on the Minus side of the normal
  int pos = 0;  // strictly on the Plus side
  int smaller() const noexcept { return neg < pos ? neg : pos; }
};

/// Oriented affine hyperplane through d arbitrary points (not necessarily
/// data points), evaluated with the configured predicate backend.
class PlaneEvaluator {
 public:
  /// Throws DegenerateInput if the points are affinely dependent.
  PlaneEvaluator(std::span<const std::span<const double>> points,
                 const Predicates& pred);
  ~PlaneEvaluator();
  PlaneEvaluator(PlaneEvaluator&&) noexcept;
  PlaneEvaluator& operator=(PlaneEvaluator&&) noexcept;

  /// +1 or -1 relative to the canonical normal. Throws DegenerateInput when
  /// the sign cannot be decided (x within eps in float mode, x exactly on
  /// the hyperplane in exact mode).
  int side(std::span<const double> x) const;

  /// Like side() but returns 0 instead of throwing.
  int side_or_zero(std::span<const double> x) const;

  double signed_distance(std::span<const double> x) const;
  const std::vector<double>& normal() const noexcept { return normal_; }
  double offset() const noexcept { return offset_; }

 private:
  struct ExactData;
  int exact_sign(std::span<const double> x) const;

  Predicates pred_;
  int dim_ = 0;
  std::vector<double> base_;
  std::vector<double> cofactor_;      // unnormalised, canonical sign applied
  std::vector<double> cofactor_abs_;  // permanents of |minors| for the filter
  std::vector<double> normal_;
  double norm_ = 0.0;
  double offset_ = 0.0;
  int orientation_ = 1;
  bool filter_valid_ = true;
  std::vector<std::vector<double>> points_;
  mutable std::unique_ptr<ExactData> exact_;
};

Hyperplane hyperplane_through(const Dataset& data, std::span<const int> indices,
                              const Predicates& pred = {});

/// Per-point sign against the hyperplane: 0 for the defining points, +/-1
/// otherwise. Throws DegenerateInput if another point lies on it.
std::vector<int> classify_points(const Dataset& data, const Hyperplane& h,
                                 const Predicates& pred = {});

SideCounts side_counts(const Dataset& data, const Hyperplane& h,
                       const Predicates& pred = {});

/// True iff no d+1 points lie in a common hyperplane.
bool is_general_position(const Dataset& data, const Predicates& pred = {});

/// Both closed halfspaces of h: first = Plus, second = Minus.
std::pair<Halfspace, Halfspace> halfspaces_of(const Dataset& data,
                                              const Hyperplane& h,
                                              const Predicates& pred = {});

Halfspace make_halfspace(const Dataset& data, const Hyperplane& h, Side side,
                         const Predicates& pred = {});

/// "i-j-k|+|a-b" row used by region files.
std::string format_halfspace(const Halfspace& h);

}  // namespace tukey
