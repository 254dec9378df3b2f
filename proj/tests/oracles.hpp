#pragma once

// Independent reference implementations used to freeze expected values:
// a brute-force abscissa scan for inversion, central finite differences for
// derivatives, and the closed-form regulator solution map. None of these
// reuse the closed-form solve/derivative paths under test.

#include <cmath>
#include <functional>
#include <vector>

#include "gecert/setmap.hpp"

namespace oracles {

/// All abscissas with y in G(z), found by scanning n points of [lo, hi] and
/// bisecting bracketed sign changes of (nearest value - y); z where the set
/// value straddles y (segments, kinks) are kept directly. Roots closer than
/// 2 scan steps are merged.
inline std::vector<double> scan_roots(const gecert::PiecewiseGraph& g, double y, double lo,
                                      double hi, int n) {
  const double step = (hi - lo) / (n - 1);
  auto signed_gap = [&](double z) {
    const gecert::ValueSet vs = g.eval(z);
    const double below = vs.min() - y;
    const double above = vs.max() - y;
    if (below <= 0.0 && above >= 0.0) return 0.0;
    return below > 0.0 ? below : above;
  };
  std::vector<double> roots;
  double prev = signed_gap(lo);
  for (int i = 1; i < n; ++i) {
    const double z1 = lo + i * step;
    const double cur = signed_gap(z1);
    if (prev == 0.0) {
      roots.push_back(z1 - step);
    } else if (cur != 0.0 && std::signbit(cur) != std::signbit(prev)) {
      double a = z1 - step, b = z1, fa = prev;
      for (int it = 0; it < 200; ++it) {
        const double m = 0.5 * (a + b);
        const double fm = signed_gap(m);
        if (fm == 0.0) {
          a = b = m;
          break;
        }
        if (std::signbit(fm) == std::signbit(fa)) {
          a = m;
          fa = fm;
        } else {
          b = m;
        }
      }
      roots.push_back(0.5 * (a + b));
    }
    prev = cur;
  }
  if (prev == 0.0) roots.push_back(hi);
  std::vector<double> merged;
  for (double r : roots)
    if (merged.empty() || r - merged.back() > 2.0 * step) merged.push_back(r);
  return merged;
}

inline double central_diff(const std::function<double(double)>& f, double z) {
  const double h = 1e-8 * std::max(1.0, std::fabs(z));
  return (f(z + h) - f(z - h)) / (2.0 * h);
}

/// Closed-form solution of -p + R z + F_diode(z) = 0 for the ideal-switch
/// diode; single-valued for every p.
inline double regulator_solution(double p, double r, double v_f, double v_b) {
  if (p > v_f) return (p - v_f) / r;
  if (p < -v_b) return (p + v_b) / r;
  return 0.0;
}

}  // namespace oracles
