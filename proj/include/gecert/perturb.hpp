#pragma once

#include "gecert/regularity.hpp"

namespace gecert {

struct BoundReport {
  double epsilon = 0.0;   // V
  double gate = 0.0;      // b/4, V
  double bound = 0.0;     // 4*a*eps/b, A
  double observed = 0.0;  // max_t |z~(t) - z(t)|, A
  bool gate_ok = false;
  bool pass = false;  // gate_ok && observed < bound
};

/// Same f and F, perturbed source.
GeneralizedEquation perturbed_equation(const GeneralizedEquation& eq, const Signal& p_tilde);

enum class GatePolicy { enforce, warn };

/// Pointwise construction: z~(t) is the unique root of (f+F)(v) = p~(t)
/// inside B_a(z(t)). With GatePolicy::enforce, gate_violation when
/// eps >= b/4; with warn the construction proceeds anyway (the caller
/// records the gate failure). localization_empty / localization_multivalued
/// indicate a broken certificate.
Trajectory construct_perturbed_trajectory(const GeneralizedEquation& eq, const Trajectory& traj,
                                          const UniformCertificate& ucert, const Signal& p_tilde,
                                          const Grid& grid, double epsilon,
                                          GatePolicy policy = GatePolicy::enforce,
                                          const Tolerances& tol = {});

/// Radii (a, b - eps), unchanged kappa; epsilon_too_large if eps >= b.
SmrCertificate perturbed_certificate(const SmrCertificate& cert, double epsilon);

/// grid_mismatch if the trajectories sample different times.
BoundReport verify_deviation_bound(const Trajectory& traj, const Trajectory& traj_tilde,
                                   const UniformCertificate& ucert, double epsilon);

/// Windowed construction: anchors t_j spaced <= rho apart; on each window
/// z~(tau) solves (f+F)(v) = p~(tau) inside B_{a/2}(z(t_j)). Values on
/// window overlaps must agree within tol.tol_z. window_too_wide if some
/// window violates |p~(tau) - p~(t_j)| < b/4 or |z(tau) - z(t_j)| < a/2.
Trajectory method2_trajectory(const GeneralizedEquation& eq, const Trajectory& traj,
                              const UniformCertificate& ucert, const Signal& p_tilde,
                              const Grid& grid, double rho, const Tolerances& tol = {});

/// Largest rho of the form 0.5 / 2^k for which the method-2 construction
/// succeeds (window preconditions hold and every localization is a
/// singleton), found by halving from 0.5.
double choose_window_radius(const GeneralizedEquation& eq, const Trajectory& traj,
                            const UniformCertificate& ucert, const Signal& p_tilde,
                            const Grid& grid, const Tolerances& tol = {});

}  // namespace gecert
