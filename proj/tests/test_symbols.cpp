#include <doctest.h>

#include <cmath>
#include <limits>

#include "logdamp/propagator.hpp"
#include "logdamp/symbols.hpp"

using namespace logdamp;

TEST_CASE("frequency rejects negative and non-finite radii") {
  CHECK_THROWS_AS(Frequency(-1e-3), std::invalid_argument);
  CHECK_THROWS_AS(Frequency(std::numeric_limits<double>::quiet_NaN()), std::invalid_argument);
  CHECK_THROWS_AS(Frequency(std::numeric_limits<double>::infinity()), std::invalid_argument);
  CHECK(Frequency(0.0).r2() == 0.0);
}

TEST_CASE("log symbol") {
  CHECK(log_symbol(Frequency(0.0)) == 0.0);
  CHECK(log_symbol(Frequency(1.0)) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  // log1p keeps full relative accuracy for tiny radii.
  CHECK(log_symbol(Frequency(1e-9)) == doctest::Approx(1e-18).epsilon(1e-12));
}

TEST_CASE("rho is continuous across its branch point") {
  const double rb = std::sqrt(kRhoBranchR2);
  const double expect = kPi / (4.0 * std::sqrt(3.0));
  CHECK(rho(Frequency(rb)) == doctest::Approx(expect).epsilon(1e-14));
  CHECK(rho(Frequency(rb * (1 - 1e-9))) == doctest::Approx(expect).epsilon(1e-8));
  CHECK(rho(Frequency(rb * (1 + 1e-9))) == doctest::Approx(expect).epsilon(1e-8));
  const double L = log_symbol(Frequency(3.0));
  CHECK(rho(Frequency(3.0)) == doctest::Approx((L * L + kPi * kPi) / (16 * L)).epsilon(1e-15));
  CHECK(rho(Frequency(0.5)) == doctest::Approx(0.25 * std::log1p(0.25)).epsilon(1e-15));
}

TEST_CASE("phi branches") {
  CHECK(phi(Frequency(1.0)) == doctest::Approx(2.0 * std::log(2.0) / 3.0).epsilon(1e-15));
  CHECK(phi(Frequency(10.0)) == doctest::Approx(8.0 / 9.0).epsilon(1e-15));
  const double rb = std::sqrt(kPhiBranchR2);
  CHECK(phi(Frequency(rb)) == doctest::Approx(8.0 / 9.0).epsilon(1e-14));
}

TEST_CASE("rho squared never exceeds L^2/16") {
  for (int k = 0; k <= 4000; ++k) {
    const Frequency fr(std::pow(10.0, -3.0 + 6.0 * k / 4000.0));
    const SymbolValues sv = symbol_values(fr);
    CHECK(sv.rho * sv.rho <= sv.L * sv.L / 16.0 * (1 + 1e-15));
  }
}

TEST_CASE("characteristic roots") {
  const Frequency fr(2.0);
  const double L = log_symbol(fr);
  const auto [lp, lm] = char_roots(fr);
  CHECK(lp.real() == doctest::Approx(-0.5 * L));
  CHECK(lp.imag() == doctest::Approx(0.5 * kPi));
  CHECK(lm == std::conj(lp));
  CHECK(std::abs(char_poly(lp, fr)) < 1e-14);
  CHECK(std::abs(char_poly(lm, fr)) < 1e-14);

  // The pi/4 roots leave a constant residual 3 pi^2 / 16.
  const auto paper = char_roots(fr, PropagatorMode::paper).first;
  CHECK(paper.imag() == doctest::Approx(0.25 * kPi));
  CHECK(char_poly(paper, fr).real() == doctest::Approx(3.0 * kPi * kPi / 16.0).epsilon(1e-13));
  CHECK(std::abs(char_poly(paper, fr).imag()) < 1e-14);
}

TEST_CASE("energy densities") {
  const Frequency fr(1.5);
  const SymbolValues sv = symbol_values(fr);
  const SpectralState s{{0.4, -0.3}, {0.1, 0.7}};
  const double c = sv.L * sv.L + kPi * kPi;
  const EnergyDensities d = energy_densities(s, fr);
  CHECK(d.e0 == doctest::Approx(0.5 * std::norm(s.v_hat) + c / 8 * std::norm(s.u_hat)));
  CHECK(d.e == doctest::Approx(d.e0 + sv.rho * (s.v_hat * std::conj(s.u_hat)).real() +
                               0.5 * sv.rho * sv.L * std::norm(s.u_hat)));
  CHECK(d.f == doctest::Approx(sv.L * std::norm(s.v_hat) + c / 4 * std::norm(s.u_hat)));
  CHECK(d.rsrc == doctest::Approx(sv.rho * std::norm(s.v_hat)));
  CHECK(energy_e(s, fr) == d.e);
}

TEST_CASE("energy equivalence holds for arbitrary states") {
  for (int i = 0; i < 300; ++i) {
    const Frequency fr(0.05 * i);
    for (double angle = 0.0; angle < 2 * kPi; angle += 0.1) {
      const SpectralState s{std::polar(1.0, angle), {std::cos(3 * angle), -0.5}};
      const double e0 = energy_e0(s, fr);
      const double e = energy_e(s, fr);
      CHECK(e >= 0.5 * e0 * (1 - 1e-14));
      CHECK(e <= 2.25 * e0 * (1 + 1e-14));
    }
  }
}

TEST_CASE("energy rates match centered differences along trajectories") {
  const cplx u0{0.3, 0.1}, u1{-0.2, 0.5};
  for (double r : {0.2, 1.0, 1.6, 4.0}) {
    const Frequency fr(r);
    const double t = 1.7, h = 1e-4;
    const auto e_at = [&](double s) { return energy_e(propagate_closed(u0, u1, fr, s), fr); };
    const auto e0_at = [&](double s) { return energy_e0(propagate_closed(u0, u1, fr, s), fr); };
    const SpectralState s = propagate_closed(u0, u1, fr, t);
    const cplx a = closed_acceleration(u0, u1, fr, t);
    CHECK(energy_e_rate(s, a, fr) == doctest::Approx((e_at(t + h) - e_at(t - h)) / (2 * h)).epsilon(1e-7));
    CHECK(energy_e0_rate(s, a, fr) ==
          doctest::Approx((e0_at(t + h) - e0_at(t - h)) / (2 * h)).epsilon(1e-7));
    // Pointwise energy identity.
    CHECK(energy_e0_rate(s, a, fr) ==
          doctest::Approx(-log_symbol(fr) * std::norm(s.v_hat)).epsilon(1e-12));
  }
}

TEST_CASE("first pointwise decay estimate along a trajectory") {
  const cplx u0{1.0, 0.0}, u1{0.0, -1.0};
  for (double r : {0.01, 0.3, 1.2, 3.0, 9.0}) {
    const Frequency fr(r);
    const SpectralState s0{u0, u1};
    for (double t = 0.0; t <= 20.0; t += 0.25) {
      CHECK(pointwise_bound_margin(s0, propagate_closed(u0, u1, fr, t), fr, t) >= -2e-12);
    }
  }
}

TEST_CASE("mode names") {
  CHECK(std::string(to_string(PropagatorMode::ode)) == "ode");
  CHECK(std::string(to_string(PropagatorMode::paper)) == "paper");
  CHECK(oscillation_frequency(PropagatorMode::ode) == 0.5 * kPi);
  CHECK(oscillation_frequency(PropagatorMode::paper) == 0.25 * kPi);
}
