#include "logdamp/symbols.hpp"

#include <stdexcept>

namespace logdamp {

Frequency::Frequency(double r) : r_(r) {
  if (!std::isfinite(r) || r < 0.0) {
    throw std::invalid_argument("Frequency: radius must be finite and nonnegative");
  }
}

const char* to_string(PropagatorMode mode) {
  return mode == PropagatorMode::ode ? "ode" : "paper";
}

double log_symbol(Frequency freq) { return std::log1p(freq.r2()); }

double rho(Frequency freq) {
  const double L = log_symbol(freq);
  if (freq.r2() <= kRhoBranchR2) {
    return 0.25 * L;
  }
  return (L * L + kPi * kPi) / (16.0 * L);
}

double phi(Frequency freq) {
  if (freq.r2() <= kPhiBranchR2) {
    return (2.0 / 3.0) * log_symbol(freq);
  }
  return 8.0 / 9.0;
}

SymbolValues symbol_values(Frequency freq) {
  return {log_symbol(freq), rho(freq), phi(freq)};
}

double oscillation_frequency(PropagatorMode mode) {
  return mode == PropagatorMode::ode ? kPi / 2.0 : kPi / 4.0;
}

std::pair<cplx, cplx> char_roots(Frequency freq, PropagatorMode mode) {
  const double L = log_symbol(freq);
  const double omega = oscillation_frequency(mode);
  return {cplx(-0.5 * L, omega), cplx(-0.5 * L, -omega)};
}

cplx char_poly(cplx lambda, Frequency freq) {
  const double L = log_symbol(freq);
  return lambda * lambda + L * lambda + 0.25 * (L * L + kPi * kPi);
}

double energy_e0(const SpectralState& s, Frequency freq) {
  const double L = log_symbol(freq);
  return 0.5 * std::norm(s.v_hat) + 0.125 * (L * L + kPi * kPi) * std::norm(s.u_hat);
}

double energy_e(const SpectralState& s, Frequency freq) {
  const auto sym = symbol_values(freq);
  const double cross = std::real(s.v_hat * std::conj(s.u_hat));
  return energy_e0(s, freq) + sym.rho * cross + 0.5 * sym.rho * sym.L * std::norm(s.u_hat);
}

double dissipation_f(const SpectralState& s, Frequency freq) {
  const double L = log_symbol(freq);
  return L * std::norm(s.v_hat) + 0.25 * (L * L + kPi * kPi) * std::norm(s.u_hat);
}

double source_r(const SpectralState& s, Frequency freq) {
  return rho(freq) * std::norm(s.v_hat);
}

EnergyDensities energy_densities(const SpectralState& s, Frequency freq) {
  return {energy_e0(s, freq), energy_e(s, freq), dissipation_f(s, freq), source_r(s, freq)};
}

double energy_e0_rate(const SpectralState& s, cplx accel, Frequency freq) {
  const double L = log_symbol(freq);
  const double uv = std::real(s.v_hat * std::conj(s.u_hat));
  return std::real(accel * std::conj(s.v_hat)) + 0.25 * (L * L + kPi * kPi) * uv;
}

double energy_e_rate(const SpectralState& s, cplx accel, Frequency freq) {
  const auto sym = symbol_values(freq);
  const double uv = std::real(s.v_hat * std::conj(s.u_hat));
  // d/dt Re(v conj(u)) = Re(a conj(u)) + |v|^2 ; d/dt |u|^2 = 2 Re(v conj(u))
  const double cross_rate = std::real(accel * std::conj(s.u_hat)) + std::norm(s.v_hat);
  return energy_e0_rate(s, accel, freq) + sym.rho * cross_rate + sym.rho * sym.L * uv;
}

double pointwise_bound_margin(const SpectralState& state0, const SpectralState& state_t,
                              Frequency freq, double t) {
  const double twice_e0_init = 2.0 * energy_e0(state0, freq);
  const double twice_e0_t = 2.0 * energy_e0(state_t, freq);
  return 4.5 * twice_e0_init * std::exp(-phi(freq) * t) - twice_e0_t;
}

}  // namespace logdamp
