#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "logdamp/data_catalog.hpp"
#include "logdamp/fit.hpp"
#include "logdamp/propagator.hpp"
#include "logdamp/symbols.hpp"

namespace logdamp {

enum class Spacing { log, linear };

struct TimeGrid {
  double lo = 1e2;
  double hi = 1e4;
  std::size_t count = 40;
  Spacing spacing = Spacing::log;
};

std::vector<double> make_times(const TimeGrid& grid);

// Moves every time to the nearest crest of sin^2(w t), w the oscillation
// frequency of `mode`, and drops duplicates. With u0 = 0 the low-frequency
// part of |u_hat|^2 carries exactly this factor, so the snapped times sample
// the envelope of ||u(t)||^2.
std::vector<double> crest_times(std::span<const double> times, PropagatorMode mode);

struct Check {
  std::string description;
  bool pass = false;
  double margin = 0.0;  // >= 0 means satisfied
};

// Pass iff margin >= 0.
Check make_check(std::string description, double margin);

enum class PlotAxes { loglog, semilogy };

struct PlotSpec {
  std::string trace;
  PlotAxes axes = PlotAxes::loglog;
  std::vector<double> hlines;
};

struct LabeledFit {
  std::string trace;
  DecayFit fit;
};

struct ExperimentReport {
  std::string name;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::vector<Trace> traces;
  std::vector<LabeledFit> fits;
  std::vector<Check> checks;
  std::vector<PlotSpec> plots;

  bool all_pass() const;
  void add_parameter(std::string key, std::string value);
  void add_parameter(std::string key, double value);
};

// ---------------------------------------------------------------------------
// Fourier-side (Plancherel) quantities. Every spatial L^2 quantity equals
// (2 pi)^(-N) times the matching integral of the transform.

double plancherel_factor(int dim);

enum class Region { low, high, all };  // |xi| < 1, |xi| >= 1, everything

const char* to_string(Region region);

// Pointwise quantity as a function of |xi| and xi_1.
using PointwiseFn = std::function<double(double r, double xi1)>;

struct SpectralIntegralOptions {
  Region region = Region::all;
  double t = 0.0;            // sets the panel scale 1/sqrt(t)
  bool oscillatory = false;  // seed panels at quarter periods of t sqrt(log(1+r^2))
  bool angular = false;      // average over directions (non-radial data)
  double tol = 1e-10;
  std::size_t max_panels = 2'000'000;
};

// (2 pi)^(-N) int_region f(xi) dxi for f depending on |xi| and xi_1 only.
double spectral_integral(int dim, const PointwiseFn& f, const SpectralIntegralOptions& opts);

// Initial data pair; both profiles must share the dimension.
struct InitialData {
  DataProfile u0;
  DataProfile u1;

  int dim() const { return u1.dim(); }
  // Whether pointwise quadratic quantities depend on the direction of xi.
  bool needs_angular() const;
};

// ||u_t||^2 + ||L u||^2 / 4 + pi^2 ||u||^2 / 4, i.e. 2 E_u(t).
double total_energy(const InitialData& data, double t, PropagatorMode mode, double tol = 1e-10);
double squared_l2(const InitialData& data, double t, PropagatorMode mode, double tol = 1e-10);

Trace energy_trace(const InitialData& data, std::span<const double> times, PropagatorMode mode,
                   double tol = 1e-10);
Trace l2_trace(const InitialData& data, std::span<const double> times, PropagatorMode mode,
               double tol = 1e-10);

// |E_u(t) + int_0^t ||L^(1/2) u_t||^2 ds - E_u(0)| / E_u(0).
double energy_identity_residual(const InitialData& data, double t, PropagatorMode mode,
                                double tol = 1e-11);

// Same quantities driven by the numerical ODE oracle instead of the closed form.
double total_energy_oracle(const InitialData& data, double t, double tol = 1e-9);
double squared_l2_oracle(const InitialData& data, double t, double tol = 1e-9);

// (2 pi)^(-N) int_region |u_hat - F3|^2 dxi in paper mode with u0 = 0.
double profile_error(const DataProfile& u1, double t, Region region, double tol = 1e-10);
Trace profile_error_trace(const DataProfile& u1, std::span<const double> times, Region region,
                          double tol = 1e-10);

// optimality_integral(N, t) * t^(N/2).
Trace optimality_trace(int dim, std::span<const double> times);

// ---------------------------------------------------------------------------
// Pointwise inequality sweeps.

struct SweepGrid {
  std::size_t radii = 200;
  double r_max = 10.0;
  std::size_t times = 100;
  double t_max = 20.0;
  std::size_t states = 10;
};

// Energy-method inequalities along exact trajectories of `mode`, on a
// deterministic grid with seeded random initial states.
std::vector<Check> inequality_sweep(PropagatorMode mode, std::uint64_t seed,
                                    const SweepGrid& grid = {});

// (1/2) E0 <= E <= (9/4) E0 for arbitrary (not necessarily solution) states.
std::vector<Check> algebraic_equivalence_sweep(std::size_t count, std::uint64_t seed);

struct OracleComparison {
  double max_rel_error = 0.0;
  std::size_t comparisons = 0;
};

// Closed form (ODE mode) against the RK4 oracle over r in {0, 0.1, ..., r_max}
// and t in {0, 0.5, ..., t_max} for `states` random initial states.
OracleComparison oracle_equivalence(std::uint64_t seed, std::size_t states = 20,
                                    double r_max = 10.0, double t_max = 20.0,
                                    const OdeConfig& cfg = {});

// Seedable uniform generator on [-1, 1] with a bit-exact mapping from the
// 64-bit engine, so sweeps are reproducible across standard libraries.
class UniformSource {
 public:
  explicit UniformSource(std::uint64_t seed);
  double next();
  cplx next_complex();

 private:
  std::mt19937_64 engine_;
};

// ---------------------------------------------------------------------------
// End-to-end experiments.

struct ExperimentSettings {
  int dim = 3;
  PropagatorMode mode = PropagatorMode::ode;
  std::string u0 = "zero";
  std::string u1 = "gaussian:a=1";
  TimeGrid grid{};
  double tol = 1e-10;
  std::uint64_t seed = 0;
};

ExperimentReport simulate_experiment(const ExperimentSettings& s);
ExperimentReport decay_experiment(const ExperimentSettings& s);
ExperimentReport profile_experiment(const ExperimentSettings& s);
ExperimentReport optimality_experiment(const ExperimentSettings& s);
ExperimentReport lemmas_experiment(const ExperimentSettings& s);

}  // namespace logdamp
