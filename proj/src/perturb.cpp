#include "gecert/perturb.hpp"

#include <algorithm>
#include <cmath>

namespace gecert {
namespace {

/// Unique root of (f+F)(v) = y inside the closed ball B_r(center).
double localized_inverse(const PiecewiseGraph& g, double y, double center, double r,
                         const Tolerances& tol) {
  const RootSet roots = g.invert_at(y, tol);
  for (const auto& iv : roots.intervals)
    if (iv.second >= center - r && iv.first <= center + r)
      fail(Errc::localization_multivalued, "continuum solutions inside the certified ball");
  double found = 0.0;
  int count = 0;
  for (double z : roots.points)
    if (std::fabs(z - center) <= r) {
      found = z;
      ++count;
    }
  if (count == 0) fail(Errc::localization_empty, "no solution inside the certified ball");
  if (count > 1)
    fail(Errc::localization_multivalued, "several solutions inside the certified ball");
  return found;
}

}  // namespace

GeneralizedEquation perturbed_equation(const GeneralizedEquation& eq, const Signal& p_tilde) {
  GeneralizedEquation out = eq;
  out.p = p_tilde;
  return out;
}

Trajectory construct_perturbed_trajectory(const GeneralizedEquation& eq, const Trajectory& traj,
                                          const UniformCertificate& ucert, const Signal& p_tilde,
                                          const Grid& grid, double epsilon, GatePolicy policy,
                                          const Tolerances& tol) {
  if (epsilon >= ucert.b / 4.0 && policy == GatePolicy::enforce)
    fail(Errc::gate_violation, "epsilon >= b/4");
  (void)grid;
  Trajectory out;
  out.branch_id = traj.branch_id;
  out.samples.reserve(traj.samples.size());
  for (const auto& [t, z] : traj.samples) {
    // z~(t) = G_t^{-1}(p~(t) - p(t)) /\ B_a(z(t)), i.e. the root of
    // (f+F)(v) = p(t) + (p~(t) - p(t)) nearest the base sample
    const double p_t = eval_signal(eq.p, t);
    const double y = p_t + (eval_signal(p_tilde, t) - p_t);
    out.samples.push_back({t, localized_inverse(eq.summed, y, z, ucert.a, tol)});
  }
  return out;
}

SmrCertificate perturbed_certificate(const SmrCertificate& cert, double epsilon) {
  if (epsilon < 0.0) fail(Errc::validation_error, "epsilon must be nonnegative");
  if (epsilon >= cert.b) fail(Errc::epsilon_too_large, "epsilon >= b_t");
  SmrCertificate out = cert;
  out.b = cert.b - epsilon;
  return out;
}

BoundReport verify_deviation_bound(const Trajectory& traj, const Trajectory& traj_tilde,
                                   const UniformCertificate& ucert, double epsilon) {
  if (traj.samples.size() != traj_tilde.samples.size())
    fail(Errc::grid_mismatch, "trajectories sample different grids");
  BoundReport report;
  report.epsilon = epsilon;
  report.gate = ucert.b / 4.0;
  report.bound = 4.0 * ucert.a * epsilon / ucert.b;
  for (size_t i = 0; i < traj.samples.size(); ++i) {
    if (traj.samples[i].first != traj_tilde.samples[i].first)
      fail(Errc::grid_mismatch, "trajectories sample different grids");
    report.observed =
        std::max(report.observed, std::fabs(traj.samples[i].second - traj_tilde.samples[i].second));
  }
  report.gate_ok = epsilon < report.gate;
  report.pass = report.gate_ok && report.observed < report.bound;
  return report;
}

Trajectory method2_trajectory(const GeneralizedEquation& eq, const Trajectory& traj,
                              const UniformCertificate& ucert, const Signal& p_tilde,
                              const Grid& grid, double rho, const Tolerances& tol) {
  if (rho <= 0.0) fail(Errc::validation_error, "rho must be positive");
  const size_t n = traj.samples.size();
  if (n == 0) fail(Errc::empty_input, "empty trajectory");
  const double h = grid.count() > 1 ? grid.points[1] - grid.points[0] : 1.0;
  const size_t stride = std::max<size_t>(1, static_cast<size_t>(rho / h));

  auto anchor_of = [&](size_t i) {
    size_t j = ((i + stride / 2) / stride) * stride;
    return std::min(j, n - 1);
  };
  auto window_value = [&](size_t i, size_t j) {
    const auto& [tau, z_tau] = traj.samples[i];
    const auto& [t_j, z_j] = traj.samples[j];
    if (std::fabs(eval_signal(p_tilde, tau) - eval_signal(p_tilde, t_j)) >= ucert.b / 4.0)
      fail(Errc::window_too_wide, "p~ varies by b/4 or more across a window");
    if (std::fabs(z_tau - z_j) >= ucert.a / 2.0)
      fail(Errc::window_too_wide, "base trajectory varies by a/2 or more across a window");
    // z~(tau) = G_{t_j}^{-1}(p~(tau) - p(t_j)) /\ B_{a/2}(z(t_j))
    const double p_j = eval_signal(eq.p, t_j);
    const double y = p_j + (eval_signal(p_tilde, tau) - p_j);
    return localized_inverse(eq.summed, y, z_j, ucert.a / 2.0, tol);
  };

  Trajectory out;
  out.branch_id = traj.branch_id;
  out.samples.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    const size_t j = anchor_of(i);
    const double z_tilde = window_value(i, j);
    // overlap consistency against every other anchor whose window covers tau
    for (size_t k = (j >= stride ? j - stride : j); k <= std::min(j + stride, n - 1); k += stride) {
      if (k == j) continue;
      if (std::fabs(traj.samples[i].first - traj.samples[k].first) > rho) continue;
      if (std::fabs(window_value(i, k) - z_tilde) > tol.tol_z)
        fail(Errc::validation_error, "method-2 windows disagree on their overlap");
    }
    out.samples.push_back({traj.samples[i].first, z_tilde});
  }
  return out;
}

double choose_window_radius(const GeneralizedEquation& eq, const Trajectory& traj,
                            const UniformCertificate& ucert, const Signal& p_tilde,
                            const Grid& grid, const Tolerances& tol) {
  const double h = grid.count() > 1 ? grid.points[1] - grid.points[0] : 1.0;
  for (double rho = 0.5; rho >= h / 4.0; rho /= 2.0) {
    try {
      method2_trajectory(eq, traj, ucert, p_tilde, grid, rho, tol);
      return rho;
    } catch (const Error& e) {
      if (e.code() != Errc::window_too_wide && e.code() != Errc::localization_empty &&
          e.code() != Errc::localization_multivalued)
        throw;
    }
  }
  fail(Errc::window_too_wide, "no admissible window radius found");
}

}  // namespace gecert
