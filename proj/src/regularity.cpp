#include "gecert/regularity.hpp"

#include <algorithm>
#include <cmath>

namespace gecert {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

ValueSet rootset_to_values(const RootSet& r) {
  ValueSet v;
  v.points = r.points;
  v.intervals = r.intervals;
  return v;
}

ValueSet shift_values(ValueSet v, double offset) {
  for (double& y : v.points) y += offset;
  for (auto& iv : v.intervals) {
    iv.first += offset;
    iv.second += offset;
  }
  return v;
}

}  // namespace

double auxiliary_shift_check(const GeneralizedEquation& eq, double t, double t_prime,
                             const std::vector<double>& v_samples,
                             const std::vector<double>& w_samples, const Tolerances& tol) {
  const double p_t = eval_signal(eq.p, t);
  const double p_tp = eval_signal(eq.p, t_prime);
  double worst = 0.0;
  for (double v : v_samples) {
    const ValueSet fv = eq.summed.eval(v, tol);
    // G_t(v) versus G_t'(v) + p(t') - p(t), evaluated with the same float ops
    // an uninformed caller would use
    const ValueSet lhs = shift_values(fv, -p_t);
    const ValueSet rhs = shift_values(shift_values(fv, -p_tp), p_tp - p_t);
    worst = std::max(worst, set_distance(lhs, rhs));
  }
  for (double w : w_samples) {
    // G_t^{-1}(w) versus G_t'^{-1}(w + p(t) - p(t'))
    const ValueSet lhs = rootset_to_values(eq.summed.invert_at(w + p_t, tol));
    const ValueSet rhs = rootset_to_values(eq.summed.invert_at((w + (p_t - p_tp)) + p_tp, tol));
    worst = std::max(worst, set_distance(lhs, rhs));
  }
  return worst;
}

SmrCertificate smr_pointwise(const GeneralizedEquation& eq, double t, double z,
                             const Tolerances& tol) {
  const PiecewiseGraph& g = eq.summed;
  const double p_t = eval_signal(eq.p, t);
  if (g.eval(z, tol).distance(p_t) > tol.tol_res)
    fail(Errc::validation_error, "(t, z) does not satisfy the residual check");
  if (g.interior_piece(z) < 0)
    fail(Errc::on_fold, "z sits on a kink or segment abscissa of f + F");

  const std::vector<FoldPoint> folds = g.fold_points();
  double a = 1.0;  // cap for globally monotone graphs with no folds
  for (const auto& fp : folds) a = std::min(a, std::fabs(z - fp.z));
  if (a <= 0.0) fail(Errc::on_fold, "z coincides with a fold point");
  a *= kRadiusSafety;

  // inf |(f+F)'| over B_a(z): the derivative is monotone on each piece, so
  // the infimum over each overlap is attained at an overlap endpoint.
  const double lo = z - a, hi = z + a;
  double inf_deriv = kInf;
  for (const auto& piece : g.pieces()) {
    const double plo = std::max(lo, piece.domain.lo);
    const double phi = std::min(hi, piece.domain.hi);
    if (plo > phi) continue;
    inf_deriv = std::min(inf_deriv, std::fabs(piece.derivative(plo)));
    inf_deriv = std::min(inf_deriv, std::fabs(piece.derivative(phi)));
    for (double s : piece.stationary_points())
      if (s >= plo && s <= phi) inf_deriv = 0.0;
  }
  for (const auto& seg : g.segments())
    if (seg.z0 >= lo && seg.z0 <= hi) inf_deriv = 0.0;
  if (!(inf_deriv > 0.0) || inf_deriv == kInf)
    fail(Errc::on_fold, "f + F is not locally invertible on the certified ball");

  // b: stay below every fold ordinate gap and inside the image of the ball.
  double b = kInf;
  for (const auto& fp : folds) b = std::min(b, std::fabs(fp.y - p_t));
  const Interval dom = g.domain();
  const ValueSet at_lo = g.eval(std::max(lo, dom.lo), tol);
  const ValueSet at_hi = g.eval(std::min(hi, dom.hi), tol);
  const double y_max = std::max(at_lo.max(), at_hi.max());
  const double y_min = std::min(at_lo.min(), at_hi.min());
  b = std::min(b, y_max - p_t);
  b = std::min(b, p_t - y_min);
  if (!(b > 0.0)) fail(Errc::on_fold, "p(t) touches a fold ordinate");
  b *= kRadiusSafety;

  SmrCertificate cert;
  cert.t = t;
  cert.z = z;
  cert.a = a;
  cert.b = b;
  cert.kappa = kKappaMargin / inf_deriv;
  return cert;
}

SmrCertificate reduce_radii(const SmrCertificate& cert, double a_prime, double b_prime) {
  if (!(a_prime > 0.0) || !(b_prime > 0.0) || a_prime > cert.a || b_prime > cert.b)
    fail(Errc::validation_error, "reduced radii must satisfy 0 < a' <= a, 0 < b' <= b");
  if (cert.kappa * b_prime > a_prime)
    fail(Errc::ratio_violation, "kappa * b' > a'");
  SmrCertificate out = cert;
  out.a = a_prime;
  out.b = b_prime;
  return out;
}

UniformCertificate uniform_certificate(std::vector<SmrCertificate> certs) {
  if (certs.empty()) fail(Errc::empty_input, "no pointwise certificates");
  UniformCertificate u;
  u.a = kInf;
  u.b = kInf;
  u.kappa = 0.0;
  for (const auto& c : certs) {
    u.a = std::min(u.a, c.a);
    u.b = std::min(u.b, c.b);
    u.kappa = std::max(u.kappa, c.kappa);
  }
  u.b_capped = std::min(u.a / u.kappa, u.b);
  u.pointwise = std::move(certs);
  return u;
}

LocalizationCheck verify_localization(const GeneralizedEquation& eq, const SmrCertificate& cert,
                                      int n_samples, const Tolerances& tol) {
  if (n_samples < 2) fail(Errc::validation_error, "need at least 2 ordinate samples");
  const double p_t = eval_signal(eq.p, cert.t);
  LocalizationCheck check;
  double prev_y = 0.0, prev_z = 0.0;
  bool have_prev = false;
  for (int i = 0; i < n_samples; ++i) {
    const double y = -cert.b + 2.0 * cert.b * i / (n_samples - 1);
    const RootSet roots = eq.summed.invert_at(p_t + y, tol);
    std::vector<double> in_ball;
    for (double z : roots.points)
      if (std::fabs(z - cert.z) <= cert.a) in_ball.push_back(z);
    bool continuum = false;
    for (const auto& iv : roots.intervals)
      if (iv.second >= cert.z - cert.a && iv.first <= cert.z + cert.a) continuum = true;
    if (continuum || in_ball.size() > 1) {
      check.single_valued = false;
      ++check.multivalued_count;
      have_prev = false;
      continue;
    }
    if (in_ball.empty()) {
      check.single_valued = false;
      ++check.empty_count;
      have_prev = false;
      continue;
    }
    if (have_prev && y != prev_y)
      check.lipschitz_estimate =
          std::max(check.lipschitz_estimate, std::fabs(in_ball[0] - prev_z) / (y - prev_y));
    prev_y = y;
    prev_z = in_ball[0];
    have_prev = true;
  }
  return check;
}

double continuity_check(const Trajectory& traj, const Signal& p,
                        const std::vector<SmrCertificate>& certs) {
  if (certs.size() != traj.samples.size())
    fail(Errc::grid_mismatch, "one certificate per trajectory sample required");
  double worst = 0.0;
  for (size_t i = 0; i + 1 < traj.samples.size(); ++i) {
    const auto& [t0, z0] = traj.samples[i];
    const auto& [t1, z1] = traj.samples[i + 1];
    const double dp = std::fabs(eval_signal(p, t0) - eval_signal(p, t1));
    worst = std::max(worst, std::fabs(z0 - z1) - certs[i].kappa * dp);
  }
  return std::max(worst, 0.0);
}

}  // namespace gecert
