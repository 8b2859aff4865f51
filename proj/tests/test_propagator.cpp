#include <doctest.h>

#include <cmath>
#include <vector>

#include "logdamp/errors.hpp"
#include "logdamp/propagator.hpp"

using namespace logdamp;

namespace {

const cplx kU0{0.3, 0.1};
const cplx kU1{-0.2, 0.5};

void check_close(cplx got, cplx want, double tol) {
  CAPTURE(got);
  CAPTURE(want);
  CHECK(std::abs(got - want) <= tol * std::max(1.0, std::abs(want)));
}

}  // namespace

// Reference states from the 30-digit matrix exponential in tools/oracles.py.
TEST_CASE("closed form matches the matrix-exponential reference") {
  SpectralState s = propagate_closed(kU0, kU1, Frequency(1.3), 2.7);
  check_close(s.u_hat, {-0.028118848222385751851, -0.093885867160090926419}, 1e-14);
  check_close(s.v_hat, {0.13046473895416666676, 0.017661934682735684862}, 1e-14);

  s = propagate_closed(kU0, kU1, Frequency(0.0), 4.0);
  check_close(s.u_hat, kU0, 1e-14);
  check_close(s.v_hat, kU1, 1e-14);

  s = propagate_closed(kU0, kU1, Frequency(7.5), 0.6);
  check_close(s.u_hat, {0.11462267152743307277, 0.12487037120553062455}, 1e-14);
  check_close(s.v_hat, {-0.2741123787048256872, -0.16784756196056743301}, 1e-14);
}

TEST_CASE("paper mode matches the reference for the pi^2/16 equation") {
  const SpectralState s = propagate_closed(kU0, kU1, Frequency(1.3), 2.7, PropagatorMode::paper);
  check_close(s.u_hat, {-0.055933273070809369888, 0.14310323096643001655}, 1e-14);
  check_close(s.v_hat, {-0.018062976307716041439, -0.16389692782254340801}, 1e-14);
}

TEST_CASE("initial conditions are reproduced at t = 0") {
  for (auto mode : {PropagatorMode::ode, PropagatorMode::paper}) {
    const SpectralState s = propagate_closed(kU0, kU1, Frequency(2.0), 0.0, mode);
    check_close(s.u_hat, kU0, 1e-15);
    check_close(s.v_hat, kU1, 1e-15);
  }
}

TEST_CASE("equation defect") {
  for (double r : {0.0, 0.5, 2.0, 10.0}) {
    const Frequency fr(r);
    for (double t : {0.0, 1.0, 7.3}) {
      const SpectralState s = propagate_closed(kU0, kU1, fr, t);
      const cplx a = closed_acceleration(kU0, kU1, fr, t);
      CHECK(std::abs(equation_defect(s, a, fr)) < 1e-14);
      check_close(a, ode_acceleration(s, fr), 1e-14);

      // The pi/4 trajectory leaves the residual (3 pi^2/16) u.
      const SpectralState p = propagate_closed(kU0, kU1, fr, t, PropagatorMode::paper);
      const cplx pa = closed_acceleration(kU0, kU1, fr, t, PropagatorMode::paper);
      check_close(equation_defect(p, pa, fr), 3.0 * kPi * kPi / 16.0 * p.u_hat, 1e-13);
    }
  }
}

TEST_CASE("closed form is linear in the data") {
  const Frequency fr(0.8);
  const SpectralState a = propagate_closed(kU0, 0.0, fr, 3.1);
  const SpectralState b = propagate_closed(0.0, kU1, fr, 3.1);
  const SpectralState ab = propagate_closed(kU0, kU1, fr, 3.1);
  check_close(ab.u_hat, a.u_hat + b.u_hat, 1e-15);
  check_close(ab.v_hat, a.v_hat + b.v_hat, 1e-15);
}

TEST_CASE("negative time is rejected") {
  CHECK_THROWS_AS(propagate_closed(kU0, kU1, Frequency(1.0), -1.0), std::invalid_argument);
  CHECK_THROWS_AS(ode_oracle(kU0, kU1, Frequency(1.0), -1.0), std::invalid_argument);
}

TEST_CASE("RK4 oracle agrees with the closed form") {
  for (double r : {0.0, 1.3, 7.5}) {
    const Frequency fr(r);
    const SpectralState exact = propagate_closed(kU0, kU1, fr, 2.7);
    const SpectralState num = ode_oracle(kU0, kU1, fr, 2.7);
    check_close(num.u_hat, exact.u_hat, 1e-9);
    check_close(num.v_hat, exact.v_hat, 1e-9);
  }
}

TEST_CASE("oracle trace reports every requested time") {
  const std::vector<double> times{0.0, 0.5, 0.5, 3.0, 20.0};
  const Frequency fr(2.0);
  const auto trace = ode_oracle_trace(kU0, kU1, fr, times);
  REQUIRE(trace.size() == times.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    const SpectralState exact = propagate_closed(kU0, kU1, fr, times[i]);
    const double scale = std::abs(exact.u_hat) + std::abs(exact.v_hat);
    CHECK(std::abs(trace[i].u_hat - exact.u_hat) <= 1e-8 * scale);
  }
  const std::vector<double> backwards{1.0, 0.5};
  CHECK_THROWS_AS(ode_oracle_trace(kU0, kU1, fr, backwards), std::invalid_argument);
}

TEST_CASE("oracle survives states that decay past underflow") {
  const SpectralState s = ode_oracle(kU0, kU1, Frequency(1e3), 200.0);
  CHECK(std::abs(s.u_hat) < 1e-250);
}

TEST_CASE("oracle step budget") {
  OdeConfig cfg;
  cfg.max_steps = 10;
  CHECK_THROWS_AS(ode_oracle(kU0, kU1, Frequency(1.0), 50.0, cfg), StepLimitExceeded);
  cfg = {};
  cfg.tol = 0.0;
  CHECK_THROWS_AS(ode_oracle(kU0, kU1, Frequency(1.0), 1.0, cfg), std::invalid_argument);
}
