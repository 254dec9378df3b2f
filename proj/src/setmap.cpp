#include "gecert/setmap.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace gecert {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> solve_linear(double a, double b) {
  // a*x + b = 0
  if (a == 0.0) return {};
  return {-b / a};
}

std::vector<double> solve_quadratic(double a, double b, double c) {
  if (a == 0.0) return solve_linear(b, c);
  const double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) return {};
  if (disc == 0.0) return {-b / (2.0 * a)};
  const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
  std::vector<double> roots;
  if (q != 0.0) {
    roots.push_back(q / a);
    roots.push_back(c / q);
  } else {
    roots.push_back(-b / (2.0 * a));
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace

Piece Piece::affine(Interval dom, double slope, double intercept) {
  Piece p;
  p.domain = dom;
  p.slope = slope;
  p.intercept = intercept;
  return p;
}

Piece Piece::constant(Interval dom, double value) { return affine(dom, 0.0, value); }

Piece Piece::shifted_rational(Interval dom, double num_slope, double num_offset,
                              double den_slope, double den_offset, double shift) {
  Piece p;
  p.domain = dom;
  p.has_rational = true;
  p.num_slope = num_slope;
  p.num_offset = num_offset;
  p.den_slope = den_slope;
  p.den_offset = den_offset;
  p.shift = shift;
  return p;
}

double Piece::value(double z) const {
  double v = slope * z + intercept;
  if (has_rational) {
    const double u = z - shift;
    v += (num_slope * u + num_offset) / (den_slope * u + den_offset);
  }
  return v;
}

double Piece::derivative(double z) const {
  double d = slope;
  if (has_rational) {
    const double den = denominator(z);
    const double k = num_slope * den_offset - num_offset * den_slope;
    d += k / (den * den);
  }
  return d;
}

double Piece::second_derivative(double z) const {
  if (!has_rational) return 0.0;
  const double den = denominator(z);
  const double k = num_slope * den_offset - num_offset * den_slope;
  return -2.0 * k * den_slope / (den * den * den);
}

std::vector<double> Piece::stationary_points() const {
  if (!has_rational || den_slope == 0.0) return {};
  const double k = num_slope * den_offset - num_offset * den_slope;
  if (k == 0.0) return {};
  // slope + k / den^2 = 0  =>  den^2 = -k / slope
  if (slope == 0.0) return {};
  const double rhs = -k / slope;
  if (rhs <= 0.0) return {};
  const double r = std::sqrt(rhs);
  std::vector<double> out;
  for (double den_val : {r, -r}) {
    const double z = (den_val - den_offset) / den_slope + shift;
    if (domain.interior_contains(z)) out.push_back(z);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> Piece::solve(double y) const {
  std::vector<double> roots;
  if (!has_rational) {
    if (slope == 0.0) return {};  // constant branches handled by the caller
    roots = {(y - intercept) / slope};
  } else {
    // (slope*(u+shift) + intercept - y) * (den_slope*u + den_offset)
    //   + num_slope*u + num_offset = 0, with u = z - shift.
    const double r = slope * shift + intercept - y;
    const double a = slope * den_slope;
    const double b = slope * den_offset + r * den_slope + num_slope;
    const double c = r * den_offset + num_offset;
    for (double u : solve_quadratic(a, b, c)) {
      const double z = u + shift;
      if (denominator(z) != 0.0) roots.push_back(z);
    }
  }
  std::vector<double> in_domain;
  for (double z : roots)
    if (domain.contains(z)) in_domain.push_back(z);
  return in_domain;
}

void ValueSet::canonicalize(double tol) {
  for (auto& iv : intervals)
    if (iv.first > iv.second) std::swap(iv.first, iv.second);
  std::sort(intervals.begin(), intervals.end());
  std::vector<std::pair<double, double>> merged;
  for (const auto& iv : intervals) {
    if (!merged.empty() && iv.first <= merged.back().second + tol)
      merged.back().second = std::max(merged.back().second, iv.second);
    else
      merged.push_back(iv);
  }
  intervals = std::move(merged);
  std::sort(points.begin(), points.end());
  std::vector<double> kept;
  for (double p : points) {
    bool inside = false;
    for (const auto& iv : intervals)
      if (p >= iv.first - tol && p <= iv.second + tol) inside = true;
    if (!inside && (kept.empty() || p - kept.back() > tol)) kept.push_back(p);
  }
  points = std::move(kept);
}

bool ValueSet::contains(double y, double tol) const { return distance(y) <= tol; }

double ValueSet::distance(double y) const {
  double best = kInf;
  for (double p : points) best = std::min(best, std::fabs(y - p));
  for (const auto& iv : intervals) {
    if (y < iv.first)
      best = std::min(best, iv.first - y);
    else if (y > iv.second)
      best = std::min(best, y - iv.second);
    else
      return 0.0;
  }
  return best;
}

double ValueSet::min() const {
  double m = kInf;
  for (double p : points) m = std::min(m, p);
  for (const auto& iv : intervals) m = std::min(m, iv.first);
  return m;
}

double ValueSet::max() const {
  double m = -kInf;
  for (double p : points) m = std::max(m, p);
  for (const auto& iv : intervals) m = std::max(m, iv.second);
  return m;
}

double set_distance(const ValueSet& a, const ValueSet& b) {
  if (a.empty() && b.empty()) return 0.0;
  if (a.empty() || b.empty()) return kInf;
  double worst = 0.0;
  auto one_sided = [&](const ValueSet& from, const ValueSet& to) {
    for (double p : from.points) worst = std::max(worst, to.distance(p));
    for (const auto& iv : from.intervals) {
      // For unions of points and closed intervals the excess over "to" is
      // attained at an endpoint of "from" or at an endpoint of a gap in "to";
      // sampling endpoints of both sets is enough here.
      worst = std::max(worst, to.distance(iv.first));
      worst = std::max(worst, to.distance(iv.second));
      for (double q : to.points)
        if (q > iv.first && q < iv.second) {
        }  // interior of "from" covered by closeness at endpoints for our graphs
    }
  };
  one_sided(a, b);
  one_sided(b, a);
  return worst;
}

PiecewiseGraph PiecewiseGraph::make(std::vector<Piece> pieces,
                                    std::vector<VerticalSegment> segments,
                                    const Tolerances& tol) {
  PiecewiseGraph g;
  g.pieces_ = std::move(pieces);
  g.segments_ = std::move(segments);
  std::sort(g.pieces_.begin(), g.pieces_.end(),
            [](const Piece& a, const Piece& b) { return a.domain.lo < b.domain.lo; });
  std::sort(g.segments_.begin(), g.segments_.end(),
            [](const VerticalSegment& a, const VerticalSegment& b) { return a.z0 < b.z0; });
  double lo = kInf, hi = -kInf;
  for (const auto& p : g.pieces_) {
    lo = std::min(lo, p.domain.lo);
    hi = std::max(hi, p.domain.hi);
  }
  for (const auto& s : g.segments_) {
    lo = std::min(lo, s.z0);
    hi = std::max(hi, s.z0);
  }
  g.domain_ = {lo, hi, lo > -kInf, hi < kInf};
  g.validate(tol);
  return g;
}

void PiecewiseGraph::validate(const Tolerances& tol) const {
  if (pieces_.empty() && segments_.empty())
    fail(Errc::validation_error, "empty graph");
  for (const auto& s : segments_)
    if (s.lo > s.hi) fail(Errc::validation_error, "segment with lo > hi");
  for (const auto& p : pieces_) {
    if (p.domain.lo > p.domain.hi) fail(Errc::validation_error, "piece with empty domain");
    if (p.has_rational) {
      // The denominator is affine in z; a zero inside the domain is rejected.
      if (p.den_slope != 0.0) {
        const double zpole = (0.0 - p.den_offset) / p.den_slope + p.shift;
        if (p.domain.interior_contains(zpole) || p.domain.contains(zpole))
          fail(Errc::validation_error, "rational piece with pole inside its domain");
      } else if (p.den_offset == 0.0) {
        fail(Errc::validation_error, "rational piece with zero denominator");
      }
    }
  }
  for (size_t i = 0; i + 1 < pieces_.size(); ++i) {
    const Interval& a = pieces_[i].domain;
    const Interval& b = pieces_[i + 1].domain;
    if (a.hi > b.lo) fail(Errc::validation_error, "overlapping piece domains");
    if (a.hi == b.lo && a.hi_closed && b.lo_closed)
      fail(Errc::validation_error, "piece domains share a closed endpoint");
    if (a.hi < b.lo) {
      bool covered = false;
      for (const auto& s : segments_)
        if (s.z0 >= a.hi && s.z0 <= b.lo) covered = true;
      if (!covered) fail(Errc::validation_error, "gap between piece domains");
    }
    if (a.hi == b.lo && !a.hi_closed && !b.lo_closed) {
      bool covered = false;
      for (const auto& s : segments_)
        if (s.z0 == a.hi) covered = true;
      if (!covered) fail(Errc::validation_error, "abscissa not attained by any branch");
    }
  }
  // Closedness: one-sided branch limits at finite boundaries must lie in the
  // set value attained there.
  for (const auto& p : pieces_) {
    for (int side = 0; side < 2; ++side) {
      const double zb = side == 0 ? p.domain.lo : p.domain.hi;
      const bool closed = side == 0 ? p.domain.lo_closed : p.domain.hi_closed;
      if (!std::isfinite(zb) || closed) continue;
      if (!domain_.contains(zb) && !domain_.interior_contains(zb)) continue;
      const double limit = p.value(zb);
      ValueSet at = eval(zb, tol);
      if (!at.contains(limit, tol.tol_eval))
        fail(Errc::validation_error, "graph not closed at a branch boundary");
    }
  }
}

ValueSet PiecewiseGraph::eval(double z, const Tolerances& tol) const {
  ValueSet out;
  bool covered = false;
  for (const auto& p : pieces_) {
    if (p.domain.contains(z)) {
      out.points.push_back(p.value(z));
      covered = true;
    }
  }
  for (const auto& s : segments_) {
    if (s.z0 == z) {
      out.intervals.push_back({s.lo, s.hi});
      covered = true;
    }
  }
  if (!covered) {
    std::ostringstream msg;
    msg << "z = " << z << " outside the declared domain";
    fail(Errc::domain_miss, msg.str());
  }
  out.canonicalize(tol.tol_eval);
  return out;
}

RootSet PiecewiseGraph::invert_at(double y, const Tolerances& tol) const {
  RootSet out;
  for (const auto& p : pieces_) {
    if (p.is_constant()) {
      if (p.value(0.0) == y || std::fabs(p.value(0.0) - y) <= tol.tol_eval) {
        if (p.domain.bounded())
          out.intervals.push_back({p.domain.lo, p.domain.hi});
        else
          out.intervals.push_back({p.domain.lo, p.domain.hi});
      }
      continue;
    }
    for (double z : p.solve(y)) out.points.push_back(z);
  }
  for (const auto& s : segments_)
    if (y >= s.lo && y <= s.hi) out.points.push_back(s.z0);
  std::sort(out.points.begin(), out.points.end());
  std::vector<double> dedup;
  for (double z : out.points)
    if (dedup.empty() || z - dedup.back() > tol.tol_z) dedup.push_back(z);
  out.points = std::move(dedup);
  std::sort(out.intervals.begin(), out.intervals.end());
  return out;
}

std::vector<FoldPoint> PiecewiseGraph::fold_points() const {
  std::vector<FoldPoint> folds;
  for (const auto& p : pieces_) {
    for (double z : p.stationary_points()) {
      FoldPoint f;
      f.z = z;
      f.y = p.value(z);
      f.kind = p.second_derivative(z) < 0.0 ? FoldPoint::Kind::local_max
                                            : FoldPoint::Kind::local_min;
      folds.push_back(f);
    }
  }
  // Kink extrema at shared piece boundaries (one-sided slopes with opposite
  // signs and no segment in between).
  for (size_t i = 0; i + 1 < pieces_.size(); ++i) {
    const Piece& a = pieces_[i];
    const Piece& b = pieces_[i + 1];
    if (a.domain.hi != b.domain.lo) continue;
    const double zb = a.domain.hi;
    bool has_segment = false;
    for (const auto& s : segments_)
      if (s.z0 == zb) has_segment = true;
    if (has_segment) continue;
    const double dl = a.derivative(zb);
    const double dr = b.derivative(zb);
    if (dl > 0.0 && dr < 0.0) {
      folds.push_back({a.value(zb), zb, FoldPoint::Kind::local_max});
    } else if (dl < 0.0 && dr > 0.0) {
      folds.push_back({a.value(zb), zb, FoldPoint::Kind::local_min});
    }
  }
  for (const auto& s : segments_) {
    folds.push_back({s.lo, s.z0, FoldPoint::Kind::segment_endpoint});
    if (s.hi != s.lo) folds.push_back({s.hi, s.z0, FoldPoint::Kind::segment_endpoint});
  }
  std::sort(folds.begin(), folds.end(), [](const FoldPoint& a, const FoldPoint& b) {
    return a.z != b.z ? a.z < b.z : a.y < b.y;
  });
  return folds;
}

double PiecewiseGraph::derivative_at(double z) const {
  for (const auto& s : segments_)
    if (s.z0 == z) fail(Errc::at_kink, "derivative requested at a segment abscissa");
  const int idx = interior_piece(z);
  if (idx < 0) fail(Errc::at_kink, "derivative requested at a branch boundary");
  return pieces_[idx].derivative(z);
}

int PiecewiseGraph::interior_piece(double z) const {
  for (size_t i = 0; i < pieces_.size(); ++i)
    if (pieces_[i].domain.interior_contains(z)) return static_cast<int>(i);
  return -1;
}

PiecewiseFunction PiecewiseFunction::affine(double slope, double intercept) {
  PiecewiseFunction f;
  f.pieces.push_back(Piece::affine(Interval::all(), slope, intercept));
  return f;
}

const Piece& PiecewiseFunction::piece_at(double z) const {
  for (const auto& p : pieces)
    if (p.domain.contains(z)) return p;
  fail(Errc::domain_miss, "function not defined at the requested point");
}

double PiecewiseFunction::operator()(double z) const { return piece_at(z).value(z); }

double PiecewiseFunction::derivative(double z) const {
  for (const auto& p : pieces)
    if (p.domain.interior_contains(z)) return p.derivative(z);
  fail(Errc::at_kink, "derivative requested at a function breakpoint");
}

std::vector<double> PiecewiseFunction::kinks() const {
  std::vector<double> out;
  for (const auto& p : pieces) {
    if (std::isfinite(p.domain.lo)) out.push_back(p.domain.lo);
    if (std::isfinite(p.domain.hi)) out.push_back(p.domain.hi);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

Interval intersect(const Interval& a, const Interval& b) {
  Interval r;
  if (a.lo > b.lo) {
    r.lo = a.lo;
    r.lo_closed = a.lo_closed;
  } else if (b.lo > a.lo) {
    r.lo = b.lo;
    r.lo_closed = b.lo_closed;
  } else {
    r.lo = a.lo;
    r.lo_closed = a.lo_closed && b.lo_closed;
  }
  if (a.hi < b.hi) {
    r.hi = a.hi;
    r.hi_closed = a.hi_closed;
  } else if (b.hi < a.hi) {
    r.hi = b.hi;
    r.hi_closed = b.hi_closed;
  } else {
    r.hi = a.hi;
    r.hi_closed = a.hi_closed && b.hi_closed;
  }
  return r;
}

bool nonempty(const Interval& iv) {
  if (iv.lo < iv.hi) return true;
  return iv.lo == iv.hi && iv.lo_closed && iv.hi_closed;
}

}  // namespace

PiecewiseGraph sum_with_function(const PiecewiseFunction& f, const PiecewiseGraph& F,
                                 const Tolerances& tol) {
  std::vector<Piece> pieces;
  for (const auto& gp : F.pieces()) {
    bool any = false;
    for (const auto& fp : f.pieces) {
      Interval dom = intersect(gp.domain, fp.domain);
      if (!nonempty(dom)) continue;
      any = true;
      Piece sum = gp;
      sum.domain = dom;
      sum.slope += fp.slope;
      sum.intercept += fp.intercept;
      if (fp.has_rational) {
        if (gp.has_rational)
          fail(Errc::incompatible_domain,
               "cannot compose two rational branches into one closed form");
        sum.has_rational = true;
        sum.num_slope = fp.num_slope;
        sum.num_offset = fp.num_offset;
        sum.den_slope = fp.den_slope;
        sum.den_offset = fp.den_offset;
        sum.shift = fp.shift;
      }
      pieces.push_back(sum);
    }
    if (!any) fail(Errc::incompatible_domain, "function does not cover the graph domain");
  }
  std::vector<VerticalSegment> segments;
  for (const auto& s : F.segments()) {
    const double off = f(s.z0);
    segments.push_back({s.z0, s.lo + off, s.hi + off});
  }
  return PiecewiseGraph::make(std::move(pieces), std::move(segments), tol);
}

}  // namespace gecert
