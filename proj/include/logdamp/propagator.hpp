#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "logdamp/symbols.hpp"

namespace logdamp {

struct OdeConfig {
  double step = 1e-2;             // initial step
  double tol = 1e-10;             // local error target per unit time, relative to |state|
  std::size_t max_steps = 50'000'000;
};

// Exact state at time t from (u0, u1). Both modes share the damped-oscillator
// form exp(-L t/2) [a cos(w t) + b sin(w t)] with b = (u1 + L u0 / 2) / w; the
// ode mode uses w = pi/2 and paper mode uses w = pi/4.
SpectralState propagate_closed(cplx u0, cplx u1, Frequency freq, double t,
                               PropagatorMode mode = PropagatorMode::ode);

// Analytic second time derivative of the closed-form trajectory.
cplx closed_acceleration(cplx u0, cplx u1, Frequency freq, double t,
                         PropagatorMode mode = PropagatorMode::ode);

// Residual u'' + L u' + (L^2/4 + pi^2/4) u of the Fourier-space equation.
cplx equation_defect(const SpectralState& state, cplx accel, Frequency freq);

// Acceleration the Fourier-space equation assigns to a state.
cplx ode_acceleration(const SpectralState& state, Frequency freq);

// Classical RK4 with step doubling and Richardson correction, integrating the
// Fourier-space equation from 0 to t. Throws StepLimitExceeded.
SpectralState ode_oracle(cplx u0, cplx u1, Frequency freq, double t, const OdeConfig& cfg = {});

// Same integrator, one pass, reporting the state at each of `times`
// (nondecreasing, nonnegative).
std::vector<SpectralState> ode_oracle_trace(cplx u0, cplx u1, Frequency freq,
                                            std::span<const double> times,
                                            const OdeConfig& cfg = {});

}  // namespace logdamp
