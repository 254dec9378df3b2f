#pragma once

#include <limits>
#include <utility>
#include <vector>

#include "gecert/common.hpp"

namespace gecert {

/// Real interval with explicit open/closed endpoint flags. Infinite endpoints
/// are always treated as open.
struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  bool lo_closed = false;
  bool hi_closed = false;

  static Interval closed(double lo, double hi) { return {lo, hi, true, true}; }
  static Interval open(double lo, double hi) { return {lo, hi, false, false}; }
  static Interval open_closed(double lo, double hi) { return {lo, hi, false, true}; }
  static Interval closed_open(double lo, double hi) { return {lo, hi, true, false}; }
  static Interval all() { return {}; }

  bool contains(double z) const {
    if (z < lo || z > hi) return false;
    if (z == lo && !lo_closed) return false;
    if (z == hi && !hi_closed) return false;
    return true;
  }
  bool interior_contains(double z) const { return z > lo && z < hi; }
  bool bounded() const {
    return lo > -std::numeric_limits<double>::infinity() &&
           hi < std::numeric_limits<double>::infinity();
  }
};

/// One single-valued branch of a piecewise graph:
///
///   value(z) = slope*z + intercept
///            + (num_slope*(z - shift) + num_offset) / (den_slope*(z - shift) + den_offset)
///
/// with the rational term optional. This covers affine and constant branches,
/// shifted linear-fractional branches, and their sums, all of which evaluate,
/// differentiate and invert in closed form.
struct Piece {
  Interval domain;
  double slope = 0.0;
  double intercept = 0.0;
  bool has_rational = false;
  double num_slope = 0.0;
  double num_offset = 0.0;
  double den_slope = 0.0;
  double den_offset = 0.0;
  double shift = 0.0;

  static Piece affine(Interval dom, double slope, double intercept);
  static Piece constant(Interval dom, double value);
  static Piece shifted_rational(Interval dom, double num_slope, double num_offset,
                                double den_slope, double den_offset, double shift);

  double value(double z) const;
  double derivative(double z) const;
  /// Second derivative; zero for affine pieces.
  double second_derivative(double z) const;
  /// Interior zeros of the derivative (at most two for affine+rational form).
  std::vector<double> stationary_points() const;
  /// All z in the piece domain with value(z) == y, in closed form.
  std::vector<double> solve(double y) const;
  bool is_constant() const { return slope == 0.0 && !has_rational; }
  /// Denominator of the rational term; never zero inside the domain.
  double denominator(double z) const { return den_slope * (z - shift) + den_offset; }
};

/// Vertical segment of the graph: the set value [lo, hi] attained at z0.
struct VerticalSegment {
  double z0 = 0.0;
  double lo = 0.0;
  double hi = 0.0;
};

/// Canonical finite union of points and closed intervals (codomain of
/// set-valued evaluation). Canonical form keeps intervals disjoint, points
/// outside every interval, everything sorted ascending.
struct ValueSet {
  std::vector<double> points;
  std::vector<std::pair<double, double>> intervals;

  static ValueSet point(double y) { return {{y}, {}}; }
  static ValueSet interval(double lo, double hi) { return {{}, {{lo, hi}}}; }

  void canonicalize(double tol);
  bool contains(double y, double tol) const;
  /// Distance from y to the nearest member; +inf for an empty set.
  double distance(double y) const;
  double min() const;
  double max() const;
  bool empty() const { return points.empty() && intervals.empty(); }
};

/// Symmetric (Hausdorff) distance between two value sets; +inf if exactly one
/// is empty, 0 if both are.
double set_distance(const ValueSet& a, const ValueSet& b);

struct FoldPoint {
  enum class Kind { local_max, local_min, segment_endpoint };
  double y = 0.0;  // ordinate at which inverse single-valuedness fails
  double z = 0.0;  // abscissa of the fold
  Kind kind = Kind::local_max;
};

/// Root set of "y in G(z)": isolated abscissas plus continuum intervals from
/// constant branches that attain y.
struct RootSet {
  std::vector<double> points;
  std::vector<std::pair<double, double>> intervals;
};

/// Closed set-valued map R => R represented as ordered function branches plus
/// vertical segments. Construction validates disjointness, coverage of the
/// declared domain, and graph closedness at shared abscissas.
class PiecewiseGraph {
 public:
  PiecewiseGraph() = default;
  static PiecewiseGraph make(std::vector<Piece> pieces, std::vector<VerticalSegment> segments,
                             const Tolerances& tol = {});

  const std::vector<Piece>& pieces() const { return pieces_; }
  const std::vector<VerticalSegment>& segments() const { return segments_; }
  /// Hull of all piece domains and segment abscissas.
  Interval domain() const { return domain_; }

  ValueSet eval(double z, const Tolerances& tol = {}) const;
  /// All z with y in G(z); points deduplicated within tol.tol_z; continuum
  /// solutions from constant branches reported as intervals.
  RootSet invert_at(double y, const Tolerances& tol = {}) const;
  std::vector<FoldPoint> fold_points() const;
  /// Closed-form derivative at a point interior to a branch; at_kink error at
  /// branch boundaries and segment abscissas.
  double derivative_at(double z) const;
  /// Piece index whose domain interior contains z, or -1.
  int interior_piece(double z) const;

 private:
  std::vector<Piece> pieces_;
  std::vector<VerticalSegment> segments_;
  Interval domain_;

  void validate(const Tolerances& tol) const;
};

/// Continuous piecewise closed-form scalar function (single-valued part of a
/// generalized equation).
struct PiecewiseFunction {
  std::vector<Piece> pieces;  // ordered, contiguous

  static PiecewiseFunction affine(double slope, double intercept);
  static PiecewiseFunction zero() { return affine(0.0, 0.0); }

  double operator()(double z) const;
  double derivative(double z) const;  // at_kink error on a piece boundary
  /// Finite interior breakpoints.
  std::vector<double> kinks() const;
  const Piece& piece_at(double z) const;
};

/// Graph of z -> f(z) + F(z). Branches are composed symbolically; segments are
/// shifted vertically by f(z0).
PiecewiseGraph sum_with_function(const PiecewiseFunction& f, const PiecewiseGraph& F,
                                 const Tolerances& tol = {});

}  // namespace gecert
