#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace logdamp {

// A real function of the radius, optionally annotated with where it is hard
// to integrate (used in error messages).
struct Integrand {
  template <class F>
    requires std::is_invocable_r_v<double, F, double>
  Integrand(F f, std::string note = {})  // NOLINT(google-explicit-constructor)
      : evaluator(std::move(f)), singularity_note(std::move(note)) {}

  double operator()(double r) const { return evaluator(r); }

  std::function<double(double)> evaluator;
  std::string singularity_note;
};

struct QuadResult {
  double value = 0.0;
  double err_estimate = 0.0;
  std::size_t evals = 0;
};

// Converged when err <= max(abs, rel * |value|).
struct QuadTolerance {
  double abs = 0.0;
  double rel = 1e-10;
  std::size_t max_panels = 200'000;
};

// Adaptive 15-point Gauss-Kronrod on [a, b]; `tol` is used both as absolute
// and relative target. Throws NonConvergence when the panel budget runs out.
QuadResult integrate(const Integrand& f, double a, double b, double tol);

// Global adaptive integration over the panels delimited by `breakpoints`
// (strictly increasing, at least two points).
QuadResult integrate(const Integrand& f, std::span<const double> breakpoints,
                     const QuadTolerance& tol);

// Integral over [breakpoints.front(), inf). The finite breakpoints seed the
// panel schedule; the piece beyond the last one is mapped onto [0, 1) by
// r = b + s / (1 - s).
QuadResult integrate_to_infinity(const Integrand& f, std::span<const double> breakpoints,
                                 const QuadTolerance& tol);

// Upper bound for the integral of |f| over [R, inf).
using TailMajorant = std::function<double(double)>;

// Integral over [a, inf) for a > 0, evaluated in the variable s = log r on
// [log a, log R]. R grows until the analytic majorant certifies the dropped
// tail below a tenth of the target; its value is added to err_estimate.
// Throws TailNotBounded when no finite R achieves that.
QuadResult integrate_with_tail(const Integrand& f, double a, const TailMajorant& tail,
                               const QuadTolerance& tol);

// Radii in [r_lo, r_hi] where t * sqrt(log(1 + r^2)) crosses a multiple of
// pi/4, bracketed by r_lo and r_hi. Used to keep panels at or below a quarter
// period of sin^2(t sqrt(log(1 + r^2))).
std::vector<double> phase_breakpoints(double t, double r_lo, double r_hi,
                                      std::size_t max_points = 1'000'000);

// Surface area of the unit sphere in R^N, via lgamma.
double surface_area(int dim);

// int_0^1 (1 + r^2)^(-t) r^p dr, p > -1.
double integral_Ip(double p, double t);
QuadResult integral_Ip_result(double p, double t, const QuadTolerance& tol);

// int_1^inf (1 + r^2)^(-t) r^p dr, with tail certified by (1+r^2)^(-t) <= r^(-2t).
double integral_Jp(double p, double t);
QuadResult integral_Jp_result(double p, double t, const QuadTolerance& tol);

// w_N * int_0^inf (1 + r^2)^(-t) sin^2(t sqrt(log(1 + r^2))) r^(N-1) dr.
double optimality_integral(int dim, double t);
QuadResult optimality_integral_result(int dim, double t, const QuadTolerance& tol);

// The same quantity computed in the variable y = sqrt(log(1 + r^2)):
// w_N * int_0^inf y e^((1-t) y^2) (e^(y^2) - 1)^((N-2)/2) sin^2(t y) dy.
double substitution_oracle(int dim, double t);
QuadResult substitution_oracle_result(int dim, double t, const QuadTolerance& tol);

// int_0^inf e^(-y^2) y^(N-1) dy by quadrature (equals Gamma(N/2)/2).
double a_const(int dim);

// int_0^inf e^(-y^2) cos^2(sqrt(t) y) y^(N-1) dy.
double f_osc(int dim, double t);

}  // namespace logdamp
