#include "logdamp/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "logdamp/errors.hpp"

namespace logdamp {
namespace {

// Coefficients (a, b) of exp(alpha t) [a cos(w t) + b sin(w t)].
struct Oscillator {
  double alpha;
  double omega;
  cplx a;
  cplx b;

  // d/dt maps (a, b) to (alpha a + w b, alpha b - w a).
  Oscillator derivative() const {
    return {alpha, omega, alpha * a + omega * b, alpha * b - omega * a};
  }

  cplx value(double t) const {
    return std::exp(alpha * t) * (a * std::cos(omega * t) + b * std::sin(omega * t));
  }
};

Oscillator make_oscillator(cplx u0, cplx u1, Frequency freq, PropagatorMode mode) {
  const double L = log_symbol(freq);
  const double omega = oscillation_frequency(mode);
  return {-0.5 * L, omega, u0, (u1 + 0.5 * L * u0) / omega};
}

void check_time(double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw std::invalid_argument("propagator: time must be finite and nonnegative");
  }
}

struct Vec2 {
  cplx u;
  cplx v;
};

Vec2 operator+(const Vec2& x, const Vec2& y) { return {x.u + y.u, x.v + y.v}; }
Vec2 operator-(const Vec2& x, const Vec2& y) { return {x.u - y.u, x.v - y.v}; }
Vec2 operator*(double s, const Vec2& x) { return {s * x.u, s * x.v}; }

// hypot-based so the error control keeps working on states below 1e-154.
double norm2(const Vec2& x) { return std::hypot(std::abs(x.u), std::abs(x.v)); }

class Rk4 {
 public:
  explicit Rk4(double L) : damping_(L), stiffness_(0.25 * (L * L + kPi * kPi)) {}

  Vec2 rhs(const Vec2& y) const { return {y.v, -damping_ * y.v - stiffness_ * y.u}; }

  Vec2 step(const Vec2& y, double h) const {
    const Vec2 k1 = rhs(y);
    const Vec2 k2 = rhs(y + (0.5 * h) * k1);
    const Vec2 k3 = rhs(y + (0.5 * h) * k2);
    const Vec2 k4 = rhs(y + h * k3);
    return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }

 private:
  double damping_;
  double stiffness_;
};

}  // namespace

SpectralState propagate_closed(cplx u0, cplx u1, Frequency freq, double t, PropagatorMode mode) {
  check_time(t);
  const Oscillator osc = make_oscillator(u0, u1, freq, mode);
  return {osc.value(t), osc.derivative().value(t)};
}

cplx closed_acceleration(cplx u0, cplx u1, Frequency freq, double t, PropagatorMode mode) {
  check_time(t);
  return make_oscillator(u0, u1, freq, mode).derivative().derivative().value(t);
}

cplx ode_acceleration(const SpectralState& s, Frequency freq) {
  const double L = log_symbol(freq);
  return -L * s.v_hat - 0.25 * (L * L + kPi * kPi) * s.u_hat;
}

cplx equation_defect(const SpectralState& s, cplx accel, Frequency freq) {
  return accel - ode_acceleration(s, freq);
}

std::vector<SpectralState> ode_oracle_trace(cplx u0, cplx u1, Frequency freq,
                                            std::span<const double> times,
                                            const OdeConfig& cfg) {
  if (!(cfg.step > 0.0) || !(cfg.tol > 0.0) || cfg.max_steps == 0) {
    throw std::invalid_argument("ode_oracle: invalid configuration");
  }
  const Rk4 rk(log_symbol(freq));
  std::vector<SpectralState> out;
  out.reserve(times.size());

  Vec2 y{u0, u1};
  double now = 0.0;
  double h = cfg.step;
  std::size_t steps = 0;

  for (double target : times) {
    check_time(target);
    if (target < now) {
      throw std::invalid_argument("ode_oracle: times must be nondecreasing");
    }
    while (now < target) {
      if (++steps > cfg.max_steps) {
        throw StepLimitExceeded("ode_oracle: step budget exhausted at t=" + std::to_string(now));
      }
      const double hh = std::min(h, target - now);
      const Vec2 full = rk.step(y, hh);
      const Vec2 half = rk.step(rk.step(y, 0.5 * hh), 0.5 * hh);
      const double err = norm2(half - full) / 15.0;
      // The absolute floor keeps fully decayed (underflowing) states from
      // forcing the step to zero.
      const double allowed = cfg.tol * hh * std::max({norm2(half), norm2(y), 1e-250});
      if (err > allowed && hh > 1e-12 * std::max(1.0, target)) {
        h = 0.5 * hh;
        continue;
      }
      y = half + (1.0 / 15.0) * (half - full);
      now = (hh == target - now) ? target : now + hh;
      if (err * 32.0 < allowed && hh == h) {
        h *= 2.0;
      }
    }
    out.push_back({y.u, y.v});
  }
  return out;
}

SpectralState ode_oracle(cplx u0, cplx u1, Frequency freq, double t, const OdeConfig& cfg) {
  const double times[] = {t};
  return ode_oracle_trace(u0, u1, freq, times, cfg).front();
}

}  // namespace logdamp
