#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gecert/circuit.hpp"
#include "oracles.hpp"

using namespace gecert;

namespace {

Signal diac_source() {
  Signal p;
  p.dc = 28.0;
  p.sinusoids.push_back({2.5, 4.0 * M_PI, 0.0});
  return p;
}

Signal diac_perturbed_source() {
  Signal p;
  p.dc = 27.83;
  p.sinusoids.push_back({2.4, 4.0 * M_PI, M_PI / 64.0});
  return p;
}

}  // namespace

TEST_CASE("eval_signal: dc plus sinusoid") {
  const Signal p = diac_source();
  CHECK(eval_signal(p, 0.0) == doctest::Approx(28.0));
  CHECK(eval_signal(p, 0.125) == doctest::Approx(30.5));
  CHECK(eval_signal(p, 0.375) == doctest::Approx(25.5));
  for (int i = 0; i <= 2000; ++i) {
    const double v = eval_signal(p, i / 2000.0);
    CHECK(v >= 25.5 - 1e-12);
    CHECK(v <= 30.5 + 1e-12);
  }
  CHECK_THROWS_AS(eval_signal(p, -0.1), Error);
  CHECK_THROWS_AS(eval_signal(p, 1.1), Error);
}

TEST_CASE("eval_signal: sample table interpolation") {
  Signal p;
  p.table = {{0.0, 1.0}, {0.5, 3.0}, {1.0, 3.0}};
  CHECK(eval_signal(p, 0.0) == 1.0);
  CHECK(eval_signal(p, 0.25) == doctest::Approx(2.0));
  CHECK(eval_signal(p, 0.75) == 3.0);
  CHECK(eval_signal(p, 1.0) == 3.0);
}

TEST_CASE("signal_distance") {
  const Grid grid = Grid::uniform(4096);
  const Signal p = diac_source();
  CHECK(signal_distance(p, p, grid) == 0.0);
  CHECK(signal_distance(Signal::constant(28.0), Signal::constant(27.83), grid) ==
        doctest::Approx(0.17));
  // frozen from the closed form: 0.17 + sqrt(2.5^2 + 2.4^2 - 2*2.5*2.4*cos(pi/64))
  const double eps = signal_distance(p, diac_perturbed_source(), grid);
  CHECK(eps == doctest::Approx(0.3263794).epsilon(1e-5));
  CHECK(std::fabs(eps - 0.326) < 1e-3);
}

TEST_CASE("signal_distance is a pseudometric on sampled triples") {
  const Grid grid = Grid::uniform(512);
  const Signal a = diac_source();
  const Signal b = diac_perturbed_source();
  Signal c;
  c.dc = 27.9;
  c.sinusoids.push_back({2.45, 4.0 * M_PI, M_PI / 128.0});
  const double ab = signal_distance(a, b, grid);
  const double ba = signal_distance(b, a, grid);
  const double ac = signal_distance(a, c, grid);
  const double cb = signal_distance(c, b, grid);
  CHECK(ab == doctest::Approx(ba).epsilon(1e-12));
  CHECK(ab <= ac + cb + 1e-9);
}

TEST_CASE("diac_characteristic values") {
  const PiecewiseGraph F = diac_characteristic(0.1);
  CHECK(F.eval(5e-5).points.at(0) == doctest::Approx(32.0));
  CHECK(F.eval(1e-4).points.at(0) == doctest::Approx(32.0));
  const ValueSet at0 = F.eval(0.0);
  CHECK(at0.intervals.at(0).first == doctest::Approx(-32.0));
  CHECK(at0.intervals.at(0).second == doctest::Approx(32.0));
  // limit toward 15 on the forward branch
  CHECK(std::fabs(F.eval(1e3).points.at(0) - 15.0) < 1e-2);
}

TEST_CASE("diac_characteristic is odd") {
  const PiecewiseGraph F = diac_characteristic(0.1);
  for (int i = 0; i <= 1000; ++i) {
    const double z = -0.05 + 0.1 * i / 1000.0;
    ValueSet pos = F.eval(z);
    ValueSet neg = F.eval(-z);
    for (double& y : neg.points) y = -y;
    for (auto& iv : neg.intervals) {
      iv = {-iv.second, -iv.first};
    }
    neg.canonicalize(1e-12);
    CHECK(set_distance(pos, neg) <= 1e-9);
  }
}

TEST_CASE("compose_series: resistor plus diac") {
  const GeneralizedEquation eq =
      compose_series({Component::resistor_of(220.0), Component::diac(0.1)}, diac_source());
  CHECK(eq.f(0.01) == doctest::Approx(2.2));
  CHECK(eq.summed.eval(1e-4).points.at(0) == doctest::Approx(32.022));
  CHECK(eval_signal(eq.p, 0.125) == doctest::Approx(30.5));
}

TEST_CASE("compose_series: purely resistive loop") {
  const GeneralizedEquation eq =
      compose_series({Component::resistor_of(100.0)}, Signal::constant(12.0));
  const ValueSet v = eq.summed.eval(0.12);
  CHECK(v.points.at(0) == doctest::Approx(12.0));
}

TEST_CASE("compose_series is additive in the resistors") {
  const Signal src = Signal::constant(10.0);
  const GeneralizedEquation split = compose_series(
      {Component::resistor_of(120.0), Component::resistor_of(100.0), Component::diac(0.1)}, src);
  const GeneralizedEquation merged =
      compose_series({Component::resistor_of(220.0), Component::diac(0.1)}, src);
  for (int i = 0; i <= 1000; ++i) {
    const double z = -0.03 + 0.06 * i / 1000.0;
    CHECK(set_distance(split.summed.eval(z), merged.summed.eval(z)) <= 1e-9);
  }
}

TEST_CASE("compose_series topology errors") {
  CHECK_THROWS_AS(
      compose_series({Component::diac(0.1), Component::practical_diode(0.7, 5.0)},
                     Signal::constant(1.0)),
      Error);
  CHECK_THROWS_AS(compose_series({}, Signal::constant(1.0)), Error);
}

TEST_CASE("component validation") {
  CHECK_THROWS_AS(Component::resistor_of(-5.0), Error);
  CHECK_THROWS_AS(Component::practical_diode(0.0, 5.0), Error);
  CHECK_THROWS_AS(Component::diac(0.0), Error);
}
