#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <utility>

namespace logdamp {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;

// Squared radii of the multiplier branch points: rho switches branch at
// log(1+r^2) = pi/sqrt(3), phi at log(1+r^2) = 4/3.
inline const double kRhoBranchR2 = std::expm1(kPi / std::sqrt(3.0));
inline const double kPhiBranchR2 = std::expm1(4.0 / 3.0);

// Radial frequency |xi|. Every multiplier in the model depends on xi only
// through its length.
class Frequency {
 public:
  explicit Frequency(double r);

  double r() const noexcept { return r_; }
  double r2() const noexcept { return r_ * r_; }

 private:
  double r_;
};

struct SymbolValues {
  double L;    // log(1 + r^2)
  double rho;
  double phi;
};

// Fourier-side unknowns (u_hat, d/dt u_hat) at one frequency and time.
struct SpectralState {
  cplx u_hat;
  cplx v_hat;
};

struct EnergyDensities {
  double e0;    // kinetic + log-elastic + mass energy density
  double e;     // e0 plus the rho-weighted cross terms
  double f;     // dissipation density
  double rsrc;  // source density rho |v|^2
};

// ODE: the closed form that solves the stated damped equation.
// Paper: the published root/solution display, which oscillates at pi/4.
enum class PropagatorMode { ode, paper };

const char* to_string(PropagatorMode mode);

double log_symbol(Frequency freq);
double rho(Frequency freq);
double phi(Frequency freq);
SymbolValues symbol_values(Frequency freq);

// Oscillation frequency of the closed-form solution for a mode.
double oscillation_frequency(PropagatorMode mode);

std::pair<cplx, cplx> char_roots(Frequency freq, PropagatorMode mode = PropagatorMode::ode);

// lambda^2 + L lambda + L^2/4 + pi^2/4: the characteristic polynomial of the
// Fourier-space equation.
cplx char_poly(cplx lambda, Frequency freq);

double energy_e0(const SpectralState& state, Frequency freq);
double energy_e(const SpectralState& state, Frequency freq);
double dissipation_f(const SpectralState& state, Frequency freq);
double source_r(const SpectralState& state, Frequency freq);
EnergyDensities energy_densities(const SpectralState& state, Frequency freq);

// Time derivative of E along a trajectory passing through `state` with
// second derivative `accel`. Uses only the product rule, so it is valid for
// any trajectory, solution or not.
double energy_e_rate(const SpectralState& state, cplx accel, Frequency freq);

// d/dt E0 along the same trajectory.
double energy_e0_rate(const SpectralState& state, cplx accel, Frequency freq);

// Slack of E0(t) <= (9/2) E0(0) exp(-phi t), written in terms of the 2*E0
// quantities: (9/2) * 2E0(state0) * exp(-phi t) - 2E0(state_t).
double pointwise_bound_margin(const SpectralState& state0, const SpectralState& state_t,
                              Frequency freq, double t);

}  // namespace logdamp
