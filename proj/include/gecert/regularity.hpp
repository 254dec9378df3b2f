#pragma once

#include <vector>

#include "gecert/solver.hpp"

namespace gecert {

/// Pointwise certificate for the auxiliary map G_t(v) = f(v) - p(t) + F(v)
/// at z for 0: the localized inverse y -> G_t^{-1}(y) /\ B_a(z) is
/// single-valued and kappa-Lipschitz on B_b(0).
struct SmrCertificate {
  double t = 0.0;
  double z = 0.0;      // A
  double a = 0.0;      // A, abscissa radius
  double b = 0.0;      // V, ordinate radius
  double kappa = 0.0;  // A/V
};

/// Aggregated constants valid at every grid point of one trajectory.
/// `b` is the raw min over b_t and is what the perturbation gate and the
/// 4*a*eps/b bound use; `b_capped` additionally applies the a/kappa cap so
/// that kappa * b_capped <= a holds.
struct UniformCertificate {
  double a = 0.0;
  double b = 0.0;
  double b_capped = 0.0;
  double kappa = 0.0;
  std::vector<SmrCertificate> pointwise;
};

/// Max discrepancy of the shift identities
///   G_t(v)      = G_t'(v) + p(t') - p(t)
///   G_t^{-1}(w) = G_t'^{-1}(w + p(t) - p(t'))
/// over the given abscissa samples (first identity) and ordinate samples
/// (second; ordinates near fold values are skipped by the caller).
double auxiliary_shift_check(const GeneralizedEquation& eq, double t, double t_prime,
                             const std::vector<double>& v_samples,
                             const std::vector<double>& w_samples,
                             const Tolerances& tol = {});

/// Certificate from the closed-form recipe:
///   a = safety * min_folds |z - z_fold|   (capped at 1 A when no folds exist)
///   b = safety * min{ |y_fold - p(t)|, image margins of f+F over B_a(z) }
///   kappa = margin / inf{ |(f+F)'(v)| : v in B_a(z) }
/// on_fold if z sits on a fold or kink of f + F.
SmrCertificate smr_pointwise(const GeneralizedEquation& eq, double t, double z,
                             const Tolerances& tol = {});

/// Same radii shrink, unchanged modulus; ratio_violation if kappa*b' > a'.
SmrCertificate reduce_radii(const SmrCertificate& cert, double a_prime, double b_prime);

/// kappa = max kappa_t, a = min a_t, b = min b_t, b_capped = min{a/kappa, b}.
UniformCertificate uniform_certificate(std::vector<SmrCertificate> certs);

struct LocalizationCheck {
  bool single_valued = true;
  double lipschitz_estimate = 0.0;
  int empty_count = 0;
  int multivalued_count = 0;
};

/// Samples n ordinates y in B_b(0) and solves (f+F)(v) = p(t) + y inside
/// B_a(z); single-valuedness requires exactly one root at every sample, and
/// the Lipschitz estimate is taken over consecutive sampled pairs.
LocalizationCheck verify_localization(const GeneralizedEquation& eq, const SmrCertificate& cert,
                                      int n_samples, const Tolerances& tol = {});

/// Max over adjacent grid pairs of |z(t)-z(tau)| - kappa_t * |p(t)-p(tau)|,
/// clamped below at 0.
double continuity_check(const Trajectory& traj, const Signal& p,
                        const std::vector<SmrCertificate>& certs);

}  // namespace gecert
