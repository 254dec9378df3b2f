#pragma once

#include <vector>

#include "gecert/circuit.hpp"

namespace gecert {

/// S(t) at a single parameter value: isolated solutions plus continuum
/// intervals coming from flat stretches of f + F.
struct SolutionSet {
  std::vector<double> points;
  std::vector<std::pair<double, double>> intervals;
};

/// One sampled solution branch. Samples are (t, z) on a contiguous sub-range
/// of the sweep grid; branch ids are assigned after linking, ordered by the
/// branch's first z value.
struct Trajectory {
  int branch_id = 0;
  std::vector<std::pair<double, double>> samples;

  double t_begin() const { return samples.front().first; }
  double t_end() const { return samples.back().first; }
  /// z at grid time t; grid_mismatch if t is not a sample time.
  double at(double t) const;
};

struct TrajectoryBundle {
  std::vector<Trajectory> trajectories;
  double isolation_margin = 0.0;
};

/// All z with p_value in f(z) + F(z).
SolutionSet solve_static(const GeneralizedEquation& eq, double p_value,
                         const Tolerances& tol = {});

/// solve_static at every grid point.
std::vector<SolutionSet> sweep(const GeneralizedEquation& eq, const Grid& grid,
                               const Tolerances& tol = {});

/// Greedy nearest-neighbor linking of consecutive solution sets into
/// trajectories. A link requires |z_next - z_prev| < delta_link; unmatched
/// points open or close branches. ambiguous_link if two candidates crowd one
/// predecessor within delta_link. Continuum intervals are never linked.
TrajectoryBundle link_trajectories(const std::vector<SolutionSet>& sets, const Grid& grid,
                                   double delta_link, const Tolerances& tol = {});

/// 0.25 x the minimum solution spacing at the first grid point; fallback when
/// the caller gives no explicit delta_link.
double default_delta_link(const std::vector<SolutionSet>& sets);

/// Min over shared grid points of pairwise trajectory distance; +inf if fewer
/// than two trajectories ever coexist.
double isolation_margin(const TrajectoryBundle& bundle);

/// Max over samples of dist(p(t), (f+F)(z(t))).
double check_selection(const Trajectory& traj, const GeneralizedEquation& eq,
                       const Tolerances& tol = {});

}  // namespace gecert
