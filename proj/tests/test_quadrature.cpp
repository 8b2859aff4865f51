#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "logdamp/errors.hpp"
#include "logdamp/quadrature.hpp"
#include "logdamp/symbols.hpp"

using namespace logdamp;

namespace {

double rel(double got, double want) { return std::abs(got - want) / std::abs(want); }

}  // namespace

TEST_CASE("smooth integrals") {
  CHECK(rel(integrate([](double x) { return x * x; }, 0.0, 1.0, 1e-12).value, 1.0 / 3.0) < 1e-14);
  const double bp[] = {0.0, 1.0, 2.0, 3.0};
  CHECK(rel(integrate([](double x) { return std::exp(x); }, bp, {}).value, std::expm1(3.0)) < 1e-12);
  const double half[] = {0.0};
  CHECK(rel(integrate_to_infinity([](double x) { return std::exp(-x); }, half, {}).value, 1.0) < 1e-12);
  CHECK(rel(integrate_to_infinity([](double x) { return 1.0 / (1.0 + x * x); }, half, {}).value,
            0.5 * kPi) < 1e-10);
}

TEST_CASE("integrable endpoint singularity") {
  const QuadResult r = integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, 1e-10);
  CHECK(rel(r.value, 2.0) < 1e-9);
  CHECK(r.evals > 0);
}

TEST_CASE("failures are reported, not hidden") {
  const double bp[] = {0.0, 1.0};
  CHECK_THROWS_AS(integrate([](double) { return std::numeric_limits<double>::quiet_NaN(); }, bp, {}),
                  NonConvergence);
  QuadTolerance tight{0.0, 1e-14, 5};
  CHECK_THROWS_AS(integrate([](double x) { return std::sin(1.0 / x); }, bp, tight), NonConvergence);
  CHECK_THROWS_AS(
      integrate_with_tail([](double r) { return 1.0 / r; }, 1.0, [](double) { return 1.0; }, {}),
      TailNotBounded);
}

TEST_CASE("certified tail") {
  const QuadResult r = integrate_with_tail([](double x) { return std::pow(x, -3.0); }, 1.0,
                                           [](double R) { return 0.5 / (R * R); }, {0.0, 1e-10});
  CHECK(rel(r.value, 0.5) < 1e-9);
  CHECK(r.err_estimate > 0.0);
}

TEST_CASE("surface area of the unit sphere") {
  CHECK(rel(surface_area(2), 2 * kPi) < 1e-14);
  CHECK(rel(surface_area(3), 4 * kPi) < 1e-14);
  CHECK(rel(surface_area(4), 2 * kPi * kPi) < 1e-14);
}

TEST_CASE("phase breakpoints sit on quarter periods") {
  const double t = 30.0;
  const auto pts = phase_breakpoints(t, 0.0, 1.0);
  REQUIRE(pts.size() > 3);
  CHECK(pts.front() == 0.0);
  CHECK(pts.back() == 1.0);
  for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
    CHECK(pts[i] > pts[i - 1]);
    const double phase = t * std::sqrt(std::log1p(pts[i] * pts[i]));
    CHECK(phase == doctest::Approx(static_cast<double>(i) * kPi / 4).epsilon(1e-12));
  }
  CHECK_THROWS_AS(phase_breakpoints(0.0, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(phase_breakpoints(1e6, 0.0, 10.0, 100), NonConvergence);
}

TEST_CASE("I_1 and J_1 closed forms") {
  for (double t : {2.0, 5.0, 11.0, 101.0}) {
    const double tail = std::exp2(1.0 - t) / (2.0 * (t - 1.0));
    CHECK(rel(integral_Ip(1.0, t), 1.0 / (2.0 * (t - 1.0)) - tail) < 1e-12);
    CHECK(rel(integral_Jp(1.0, t), tail) < 1e-12);
  }
}

// References from tools/oracles.py.
TEST_CASE("model integrals against references") {
  CHECK(rel(integral_Ip(0.0, 50.0), 0.12628129468705801636) < 1e-12);
  CHECK(rel(integral_Ip(0.0, 500.0), 0.03966302892683047248) < 1e-12);
  CHECK(rel(integral_Ip(2.0, 7.5), 0.027433107844172982527) < 1e-12);
  CHECK(rel(integral_Jp(2.0, 50.0), 1.8496155950612342179e-17) < 1e-10);
  CHECK_THROWS_AS(integral_Ip(-1.0, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(integral_Jp(1.0, 1.0), std::invalid_argument);
}

TEST_CASE("model integrals keep their asymptotic shapes") {
  // I_0(t) ~ sqrt(pi) / (2 sqrt(t)), J_2(t) ~ 2^-t / (t - 1).
  const double i0 = integral_Ip(0.0, 5000.0) * std::sqrt(5000.0);
  CHECK(i0 == doctest::Approx(0.5 * std::sqrt(kPi)).epsilon(1e-3));
  const double j2 = integral_Jp(2.0, 200.0) * 199.0 * std::exp2(200.0);
  CHECK(j2 == doctest::Approx(1.0).epsilon(2e-2));
}

TEST_CASE("optimality integral against references") {
  CHECK(rel(optimality_integral(3, 5.0), 0.39160127048491619373) < 1e-10);
  CHECK(rel(optimality_integral(3, 20.0), 0.034299629073431195511) < 1e-10);
  CHECK_THROWS_AS(optimality_integral(3, 2.5), std::invalid_argument);
  CHECK_THROWS_AS(optimality_integral(2, 10.0), std::invalid_argument);
}

TEST_CASE("substitution oracle agrees with the direct integral") {
  for (int n : {3, 4, 5}) {
    for (double t : {10.0, 100.0, 1000.0, 10000.0}) {
      CAPTURE(n);
      CAPTURE(t);
      CHECK(rel(substitution_oracle(n, t), optimality_integral(n, t)) < 1e-8);
    }
  }
}

TEST_CASE("Gaussian moments") {
  CHECK(std::abs(a_const(3) - std::sqrt(kPi) / 4) < 1e-12);
  CHECK(std::abs(a_const(4) - 0.5) < 1e-12);
  CHECK(std::abs(a_const(5) - 0.5 * std::tgamma(2.5)) < 1e-12);
  CHECK(rel(f_osc(3, 4.0), 0.19315105976807424487) < 1e-11);
  // cos^2 averages to 1/2 at large t.
  CHECK(std::abs(f_osc(3, 1e4) - 0.5 * a_const(3)) < 5e-3);
}
