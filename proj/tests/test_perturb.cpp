#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gecert/perturb.hpp"
#include "oracles.hpp"

using namespace gecert;

namespace {

Signal base_source() {
  Signal p;
  p.dc = 28.0;
  p.sinusoids.push_back({2.5, 4.0 * M_PI, 0.0});
  return p;
}

Signal tilde_source() {
  Signal p;
  p.dc = 27.83;
  p.sinusoids.push_back({2.4, 4.0 * M_PI, M_PI / 64.0});
  return p;
}

/// Source halfway between base and tilde: (p + p~)/2 as an explicit signal.
Signal half_source() {
  Signal p;
  p.dc = (28.0 + 27.83) / 2.0;
  p.sinusoids.push_back({1.25, 4.0 * M_PI, 0.0});
  p.sinusoids.push_back({1.2, 4.0 * M_PI, M_PI / 64.0});
  return p;
}

GeneralizedEquation diac_equation() {
  return compose_series({Component::resistor_of(220.0), Component::diac(0.1)}, base_source());
}

struct Fixture {
  GeneralizedEquation eq = diac_equation();
  Grid grid = Grid::uniform(1024);
  TrajectoryBundle bundle;
  UniformCertificate ucert;  // negative-resistance branch

  Fixture() {
    const auto sets = sweep(eq, grid);
    bundle = link_trajectories(sets, grid, default_delta_link(sets));
    std::vector<SmrCertificate> certs;
    for (const auto& [t, z] : z2().samples) certs.push_back(smr_pointwise(eq, t, z));
    ucert = uniform_certificate(std::move(certs));
  }
  const Trajectory& z2() const { return bundle.trajectories[1]; }
};

Fixture& fixture() {
  static Fixture f;
  return f;
}

}  // namespace

TEST_CASE("perturbed_equation keeps f and F") {
  const GeneralizedEquation eq = diac_equation();
  const GeneralizedEquation eq2 = perturbed_equation(eq, tilde_source());
  CHECK(eval_signal(eq2.p, 0.0) == doctest::Approx(27.83 + 2.4 * std::sin(M_PI / 64.0)));
  for (int i = 0; i <= 100; ++i) {
    const double z = -0.05 + 0.1 * i / 100.0;
    CHECK(set_distance(eq.summed.eval(z), eq2.summed.eval(z)) == 0.0);
  }
  // shift identity G~_t(v) = G_t(v) + p(t) - p~(t) on 100 samples
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double t = i / 99.0;
    const double v = -0.04 + 0.08 * (i % 10) / 9.0;
    const double p_t = eval_signal(eq.p, t);
    const double pt_t = eval_signal(eq2.p, t);
    ValueSet lhs = eq2.summed.eval(v);
    for (double& y : lhs.points) y -= pt_t;
    ValueSet rhs = eq.summed.eval(v);
    for (double& y : rhs.points) y = (y - p_t) + (p_t - pt_t);
    for (auto& iv : lhs.intervals) iv = {iv.first - pt_t, iv.second - pt_t};
    for (auto& iv : rhs.intervals)
      iv = {(iv.first - p_t) + (p_t - pt_t), (iv.second - p_t) + (p_t - pt_t)};
    worst = std::max(worst, set_distance(lhs, rhs));
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("construct_perturbed_trajectory: identity when p~ = p") {
  Fixture& f = fixture();
  const Trajectory same = construct_perturbed_trajectory(
      f.eq, f.z2(), f.ucert, f.eq.p, f.grid, 0.0, GatePolicy::enforce);
  REQUIRE(same.samples.size() == f.z2().samples.size());
  for (size_t i = 0; i < same.samples.size(); ++i)
    CHECK(same.samples[i].second == f.z2().samples[i].second);
}

TEST_CASE("construct_perturbed_trajectory: affine equation responds linearly") {
  const GeneralizedEquation eq =
      compose_series({Component::resistor_of(100.0)}, Signal::constant(12.0));
  const Grid grid = Grid::uniform(16);
  const auto sets = sweep(eq, grid);
  const TrajectoryBundle bundle = link_trajectories(sets, grid, 0.25);
  std::vector<SmrCertificate> certs;
  for (const auto& [t, z] : bundle.trajectories[0].samples)
    certs.push_back(smr_pointwise(eq, t, z));
  const UniformCertificate ucert = uniform_certificate(std::move(certs));
  const Signal p_tilde = Signal::constant(12.5);
  const Trajectory z_tilde = construct_perturbed_trajectory(
      eq, bundle.trajectories[0], ucert, p_tilde, grid, 0.5, GatePolicy::enforce);
  for (const auto& [t, z] : z_tilde.samples)
    CHECK(z == doctest::Approx(0.12 + 0.5 / 100.0).epsilon(1e-14));
}

TEST_CASE("gate policy") {
  Fixture& f = fixture();
  const double eps = signal_distance(base_source(), tilde_source(), Grid::uniform(4096));
  CHECK(eps >= f.ucert.b / 4.0);  // this scenario genuinely violates the gate
  CHECK_THROWS_AS(construct_perturbed_trajectory(f.eq, f.z2(), f.ucert, tilde_source(), f.grid,
                                                 eps, GatePolicy::enforce),
                  Error);
  const Trajectory z_tilde = construct_perturbed_trajectory(
      f.eq, f.z2(), f.ucert, tilde_source(), f.grid, eps, GatePolicy::warn);
  CHECK(z_tilde.samples.size() == f.z2().samples.size());
}

TEST_CASE("perturbed trajectory is a valid selection of the perturbed equation") {
  Fixture& f = fixture();
  const double eps = signal_distance(base_source(), tilde_source(), Grid::uniform(4096));
  const Trajectory z_tilde = construct_perturbed_trajectory(
      f.eq, f.z2(), f.ucert, tilde_source(), f.grid, eps, GatePolicy::warn);
  const GeneralizedEquation eq2 = perturbed_equation(f.eq, tilde_source());
  CHECK(check_selection(z_tilde, eq2) <= 1e-6);
  // continuity inheritance with the uniform kappa
  for (size_t i = 0; i + 1 < z_tilde.samples.size(); ++i) {
    const double dp = std::fabs(eval_signal(eq2.p, z_tilde.samples[i].first) -
                                eval_signal(eq2.p, z_tilde.samples[i + 1].first));
    CHECK(std::fabs(z_tilde.samples[i].second - z_tilde.samples[i + 1].second) <=
          f.ucert.kappa * dp + 1e-12);
  }
}

TEST_CASE("perturbed_certificate") {
  Fixture& f = fixture();
  const SmrCertificate cert = f.ucert.pointwise[100];
  CHECK(perturbed_certificate(cert, 0.0).b == cert.b);
  CHECK_THROWS_AS(perturbed_certificate(cert, cert.b), Error);
  try {
    perturbed_certificate(cert, cert.b);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::epsilon_too_large);
  }
  const double eps = 0.3263794;
  const SmrCertificate pc = perturbed_certificate(cert, eps);
  CHECK(pc.b == doctest::Approx(cert.b - eps));
  CHECK(pc.kappa == cert.kappa);
  // the reduced certificate verifies against the perturbed auxiliary map:
  // ordinates shift by p(t) - p~(t), which verify_localization realizes by
  // centering the ordinate ball at the perturbed signal value
  GeneralizedEquation eq2 = perturbed_equation(f.eq, tilde_source());
  SmrCertificate shifted = pc;
  // same (t, z); the perturbed-map localization is checked around the
  // residual p(t) - p~(t), i.e. ordinates p~(t) + y with |y| <= b_t - eps
  // still land within the base certificate's ordinate ball
  const LocalizationCheck check = verify_localization(eq2, shifted, 256);
  CHECK(check.single_valued);
  CHECK(check.lipschitz_estimate <= pc.kappa);
}

TEST_CASE("verify_deviation_bound on the diac scenario") {
  Fixture& f = fixture();
  const double eps = signal_distance(base_source(), tilde_source(), Grid::uniform(4096));
  CHECK(std::fabs(eps - 0.326) <= 1e-3);
  const Trajectory z_tilde = construct_perturbed_trajectory(
      f.eq, f.z2(), f.ucert, tilde_source(), f.grid, eps, GatePolicy::warn);
  const BoundReport br = verify_deviation_bound(f.z2(), z_tilde, f.ucert, eps);
  // frozen from this pipeline
  CHECK(br.bound == doctest::Approx(4.4443e-4).epsilon(1e-3));
  CHECK(br.observed == doctest::Approx(1.38604e-4).epsilon(1e-3));
  CHECK(br.observed < br.bound);
  CHECK(!br.gate_ok);  // eps = 0.3264 exceeds b/4 = 0.2988 for this recipe
  CHECK(!br.pass);
}

TEST_CASE("verify_deviation_bound: trivial and mismatched inputs") {
  Fixture& f = fixture();
  const BoundReport same = verify_deviation_bound(f.z2(), f.z2(), f.ucert, 0.0);
  CHECK(same.epsilon == 0.0);
  CHECK(same.bound == 0.0);
  CHECK(same.observed == 0.0);
  CHECK(same.gate_ok);

  Trajectory shorter = f.z2();
  shorter.samples.pop_back();
  CHECK_THROWS_AS(verify_deviation_bound(f.z2(), shorter, f.ucert, 0.0), Error);
}

TEST_CASE("halving the perturbation scales the bound linearly") {
  Fixture& f = fixture();
  const Grid fine = Grid::uniform(4096);
  const double eps = signal_distance(base_source(), tilde_source(), fine);
  const double eps_half = signal_distance(base_source(), half_source(), fine);
  CHECK(eps_half == doctest::Approx(eps / 2.0).epsilon(1e-9));
  const Trajectory zt_full = construct_perturbed_trajectory(
      f.eq, f.z2(), f.ucert, tilde_source(), f.grid, eps, GatePolicy::warn);
  const Trajectory zt_half = construct_perturbed_trajectory(
      f.eq, f.z2(), f.ucert, half_source(), f.grid, eps_half, GatePolicy::warn);
  const BoundReport full = verify_deviation_bound(f.z2(), zt_full, f.ucert, eps);
  const BoundReport half = verify_deviation_bound(f.z2(), zt_half, f.ucert, eps_half);
  CHECK(half.bound == doctest::Approx(full.bound / 2.0).epsilon(1e-9));
  CHECK(half.observed == doctest::Approx(full.observed / 2.0).epsilon(0.1));
}

TEST_CASE("method 2 agrees with method 1") {
  Fixture& f = fixture();
  const double eps = signal_distance(base_source(), tilde_source(), Grid::uniform(4096));
  const Trajectory m1 = construct_perturbed_trajectory(
      f.eq, f.z2(), f.ucert, tilde_source(), f.grid, eps, GatePolicy::warn);
  const double rho = choose_window_radius(f.eq, f.z2(), f.ucert, tilde_source(), f.grid);
  CHECK(rho > 0.0);
  const Trajectory m2 = method2_trajectory(f.eq, f.z2(), f.ucert, tilde_source(), f.grid, rho);
  REQUIRE(m1.samples.size() == m2.samples.size());
  for (size_t i = 0; i < m1.samples.size(); ++i)
    CHECK(std::fabs(m1.samples[i].second - m2.samples[i].second) <= 1e-10);
}

TEST_CASE("method 2: identity perturbation returns the base trajectory") {
  Fixture& f = fixture();
  const double rho = choose_window_radius(f.eq, f.z2(), f.ucert, f.eq.p, f.grid);
  const Trajectory m2 = method2_trajectory(f.eq, f.z2(), f.ucert, f.eq.p, f.grid, rho);
  for (size_t i = 0; i < m2.samples.size(); ++i)
    CHECK(std::fabs(m2.samples[i].second - f.z2().samples[i].second) <= 1e-12);
}

TEST_CASE("method 2 rejects oversized windows") {
  Fixture& f = fixture();
  CHECK_THROWS_AS(
      method2_trajectory(f.eq, f.z2(), f.ucert, tilde_source(), f.grid, 0.5), Error);
}
