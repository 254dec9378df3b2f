#pragma once

#include <string>
#include <vector>

#include "gecert/setmap.hpp"

namespace gecert {

/// Time-varying source voltage: DC offset plus a sum of sinusoids, or a
/// piecewise-linear sample table over [0,1]. Table and analytic parts are
/// mutually exclusive.
struct Signal {
  struct Sinusoid {
    double amplitude = 0.0;  // V
    double omega = 0.0;      // rad per unit t
    double phase = 0.0;      // rad
  };
  double dc = 0.0;
  std::vector<Sinusoid> sinusoids;
  std::vector<std::pair<double, double>> table;  // (t_i, v_i), strictly increasing t

  static Signal constant(double v) {
    Signal s;
    s.dc = v;
    return s;
  }
  bool has_table() const { return !table.empty(); }
};

/// out_of_range for t outside [0,1].
double eval_signal(const Signal& p, double t);

/// Uniform time grid over [0,1]; refined grids come from sample tables.
struct Grid {
  std::vector<double> points;

  static Grid uniform(int n);
  int count() const { return static_cast<int>(points.size()); }
};

/// max_t |p(t) - q(t)| over the grid, sharpened by golden-section search on
/// the cell pair around the discrete maximizer.
double signal_distance(const Signal& p, const Signal& q, const Grid& grid);

/// Series circuit element. Resistors contribute to the single-valued part;
/// the other kinds contribute a set-valued i-v characteristic.
struct Component {
  enum class Kind { resistor, zener, practical_diode, diac };
  Kind kind = Kind::resistor;
  double resistance = 0.0;       // resistor, ohm
  PiecewiseGraph graph;          // zener: explicit characteristic
  double v_forward = 0.0;        // practical diode, V
  double v_breakdown = 0.0;      // practical diode, V
  double d = 0.0;                // diac shape parameter

  static Component resistor_of(double r);
  static Component zener_of(PiecewiseGraph g);
  static Component practical_diode(double v_f, double v_b);
  static Component diac(double d);

  bool set_valued() const { return kind != Kind::resistor; }
  /// Characteristic graph of a set-valued component.
  PiecewiseGraph characteristic(const Tolerances& tol = {}) const;
};

/// 0 in f(z) - p(t) + F(z). `summed` caches the graph of z -> f(z) + F(z),
/// which every solver and certificate computation works on.
struct GeneralizedEquation {
  PiecewiseFunction f;
  PiecewiseGraph F;
  Signal p;
  PiecewiseGraph summed;
};

/// KVL/KCL elimination of a single-loop series netlist: resistors sum into
/// f(z) = R_total * z, the one set-valued component becomes F, the source
/// becomes p. unsupported_topology if there is more than one set-valued
/// component or none at all... a purely resistive loop gets F == {0}.
GeneralizedEquation compose_series(const std::vector<Component>& components,
                                   const Signal& source, const Tolerances& tol = {});

/// Five-branch DIAC characteristic with breakover current 1e-4 A and
/// coefficients a = 15c, b = 32d, c = -252.52d. Odd-symmetric as a set-valued
/// map; multivalued segment [-b/d, b/d] at z = 0.
PiecewiseGraph diac_characteristic(double d, const Tolerances& tol = {});

/// Ideal-switch diode with forward drop v_f and reverse blocking down to
/// -v_b: {v_f} for z > 0, [-v_b, v_f] at z = 0, {-v_b} for z < 0.
PiecewiseGraph practical_diode_graph(double v_f, double v_b, const Tolerances& tol = {});

}  // namespace gecert
