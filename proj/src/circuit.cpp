#include "gecert/circuit.hpp"

#include <algorithm>
#include <cmath>

namespace gecert {

double eval_signal(const Signal& p, double t) {
  if (t < 0.0 || t > 1.0) fail(Errc::out_of_range, "signal evaluated outside [0,1]");
  if (p.has_table()) {
    const auto& tab = p.table;
    if (t <= tab.front().first) return tab.front().second;
    if (t >= tab.back().first) return tab.back().second;
    auto it = std::upper_bound(tab.begin(), tab.end(), t,
                               [](double x, const auto& s) { return x < s.first; });
    const auto& [t1, v1] = *it;
    const auto& [t0, v0] = *(it - 1);
    return v0 + (v1 - v0) * (t - t0) / (t1 - t0);
  }
  double v = p.dc;
  for (const auto& s : p.sinusoids) v += s.amplitude * std::sin(s.omega * t + s.phase);
  return v;
}

Grid Grid::uniform(int n) {
  if (n < 2) fail(Errc::validation_error, "grid needs at least 2 points");
  Grid g;
  g.points.resize(n);
  for (int i = 0; i < n; ++i) g.points[i] = static_cast<double>(i) / (n - 1);
  g.points.back() = 1.0;
  return g;
}

namespace {

// Golden-section maximization of a unimodal function on [lo, hi].
template <class Fn>
double golden_max(Fn&& f, double lo, double hi) {
  constexpr double inv_phi = 0.6180339887498949;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 90 && hi - lo > 1e-15; ++it) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(x1);
    }
  }
  return std::max(f(lo), f(hi));
}

}  // namespace

double signal_distance(const Signal& p, const Signal& q, const Grid& grid) {
  auto diff = [&](double t) { return std::fabs(eval_signal(p, t) - eval_signal(q, t)); };
  double best = 0.0;
  int best_i = 0;
  for (int i = 0; i < grid.count(); ++i) {
    const double d = diff(grid.points[i]);
    if (d > best) {
      best = d;
      best_i = i;
    }
  }
  // Refine inside the two cells around the discrete maximizer.
  const double lo = grid.points[std::max(0, best_i - 1)];
  const double hi = grid.points[std::min(grid.count() - 1, best_i + 1)];
  if (hi > lo) best = std::max(best, golden_max(diff, lo, hi));
  return best;
}

Component Component::resistor_of(double r) {
  if (r <= 0.0) fail(Errc::validation_error, "resistance must be positive");
  Component c;
  c.kind = Kind::resistor;
  c.resistance = r;
  return c;
}

Component Component::zener_of(PiecewiseGraph g) {
  Component c;
  c.kind = Kind::zener;
  c.graph = std::move(g);
  return c;
}

Component Component::practical_diode(double v_f, double v_b) {
  if (v_f <= 0.0 || v_b <= 0.0) fail(Errc::validation_error, "diode voltages must be positive");
  Component c;
  c.kind = Kind::practical_diode;
  c.v_forward = v_f;
  c.v_breakdown = v_b;
  return c;
}

Component Component::diac(double d) {
  if (d == 0.0) fail(Errc::validation_error, "diac parameter d must be nonzero");
  Component c;
  c.kind = Kind::diac;
  c.d = d;
  return c;
}

PiecewiseGraph Component::characteristic(const Tolerances& tol) const {
  switch (kind) {
    case Kind::zener:
      return graph;
    case Kind::practical_diode:
      return practical_diode_graph(v_forward, v_breakdown, tol);
    case Kind::diac:
      return diac_characteristic(d, tol);
    case Kind::resistor:
      break;
  }
  fail(Errc::unsupported_topology, "resistor has no set-valued characteristic");
}

GeneralizedEquation compose_series(const std::vector<Component>& components,
                                   const Signal& source, const Tolerances& tol) {
  if (components.empty()) fail(Errc::validation_error, "empty component list");
  double r_total = 0.0;
  const Component* multi = nullptr;
  for (const auto& c : components) {
    if (c.kind == Component::Kind::resistor) {
      r_total += c.resistance;
    } else {
      if (multi) fail(Errc::unsupported_topology, "more than one set-valued component");
      multi = &c;
    }
  }
  GeneralizedEquation eq;
  eq.f = PiecewiseFunction::affine(r_total, 0.0);
  if (multi) {
    eq.F = multi->characteristic(tol);
  } else {
    // purely resistive loop: F == {0} everywhere
    eq.F = PiecewiseGraph::make({Piece::constant(Interval::all(), 0.0)}, {}, tol);
  }
  eq.p = source;
  eq.summed = sum_with_function(eq.f, eq.F, tol);
  return eq;
}

PiecewiseGraph diac_characteristic(double d, const Tolerances& tol) {
  if (d == 0.0) fail(Errc::validation_error, "diac parameter d must be nonzero");
  const double i_bo = 1e-4;  // breakover current
  const double c = -252.52 * d;
  const double a = 15.0 * c;
  const double b = 32.0 * d;
  std::vector<Piece> pieces;
  // z < -i_bo:  -(a(z+i_bo) + b) / (c(z+i_bo) + d)  [odd image of the forward branch]
  pieces.push_back(Piece::shifted_rational(
      {-std::numeric_limits<double>::infinity(), -i_bo, false, false}, -a, -b, c, d, -i_bo));
  pieces.push_back(Piece::constant(Interval::closed_open(-i_bo, 0.0), -b / d));
  pieces.push_back(Piece::constant(Interval::open_closed(0.0, i_bo), b / d));
  // z > i_bo:  (a(z-i_bo) - b) / (c(z-i_bo) - d)
  pieces.push_back(Piece::shifted_rational(
      {i_bo, std::numeric_limits<double>::infinity(), false, false}, a, -b, c, -d, i_bo));
  return PiecewiseGraph::make(std::move(pieces), {{0.0, -b / d, b / d}}, tol);
}

PiecewiseGraph practical_diode_graph(double v_f, double v_b, const Tolerances& tol) {
  std::vector<Piece> pieces = {
      Piece::constant({-std::numeric_limits<double>::infinity(), 0.0, false, false}, -v_b),
      Piece::constant({0.0, std::numeric_limits<double>::infinity(), false, false}, v_f),
  };
  return PiecewiseGraph::make(std::move(pieces), {{0.0, -v_b, v_f}}, tol);
}

}  // namespace gecert
