#include "logdamp/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>

#include <fmt/format.h>

#include "logdamp/errors.hpp"
#include "logdamp/quadrature.hpp"

namespace logdamp {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Oscillation-resolving panels stop here; the mapped tail beyond it carries
// only (1 + r^2)^(-t)-small contributions at the times where it is used.
constexpr double kPhaseCutoff = 12.0;

// Contributions below this envelope are dropped when driving the oracle, so
// it never integrates states that underflow.
constexpr double kNegligibleEnvelope = 1e-200;

std::vector<double> seed_points(double t, Region region, bool oscillatory) {
  const double lo = region == Region::high ? 1.0 : 0.0;
  const double hi = region == Region::low ? 1.0 : kPhaseCutoff;
  std::vector<double> pts;
  if (oscillatory && t > 0.0) {
    pts = phase_breakpoints(t, lo, hi);
  } else {
    pts = {lo, hi};
  }
  const auto add = [&](double x) {
    if (x > lo && x < hi) pts.push_back(x);
  };
  if (t > 0.0) {
    for (double c : {0.25, 0.5, 1.0, 2.0, 4.0}) add(c / std::sqrt(t));
  }
  for (double x : {0.5, 1.0, 2.0, 4.0, 8.0}) add(x);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

double angular_average(int dim, double r, const PointwiseFn& f, double norm) {
  if (r == 0.0) return f(0.0, 0.0);
  Integrand g([&](double th) {
    return f(r, r * std::cos(th)) * std::pow(std::sin(th), dim - 2);
  });
  const double bp[] = {0.0, 0.5 * kPi, kPi};
  return integrate(g, bp, QuadTolerance{0.0, 1e-12, 10'000}).value / norm;
}

void check_pair(const InitialData& data) {
  if (data.u0.dim() != data.u1.dim()) {
    throw std::invalid_argument("initial data: u0 and u1 must share the dimension");
  }
}

bool negligible(cplx a, cplx b, double L, double t) {
  return std::exp(-0.5 * L * t) * (std::abs(a) + 2.0 * std::abs(b) + L * std::abs(a)) <
         kNegligibleEnvelope;
}

// Pointwise 2 E0 density (or |u_hat|^2) from closed-form or oracle states.
enum class Quantity { energy, l2 };

PointwiseFn closed_density(const InitialData& d, double t, PropagatorMode mode, Quantity q) {
  return [&d, t, mode, q](double r, double xi1) {
    const cplx a = d.u0.hat_polar(r, xi1);
    const cplx b = d.u1.hat_polar(r, xi1);
    if (a == 0.0 && b == 0.0) return 0.0;
    const Frequency fr(r);
    const SpectralState s = propagate_closed(a, b, fr, t, mode);
    return q == Quantity::energy ? 2.0 * energy_e0(s, fr) : std::norm(s.u_hat);
  };
}

// The equation is linear, so the oracle state for data (a, b) is
// a S(1, 0) + b S(0, 1). The two unit solutions are cached per radius, which
// lets direction averaging reuse them across angles.
PointwiseFn oracle_density(const InitialData& d, double t, Quantity q, double tol) {
  struct Cache {
    double r = -1.0;
    SpectralState from_u0{}, from_u1{};
  };
  auto cache = std::make_shared<Cache>();
  return [&d, t, q, tol, cache](double r, double xi1) {
    const cplx a = d.u0.hat_polar(r, xi1);
    const cplx b = d.u1.hat_polar(r, xi1);
    if (a == 0.0 && b == 0.0) return 0.0;
    const Frequency fr(r);
    if (negligible(a, b, log_symbol(fr), t)) return 0.0;
    if (cache->r != r) {
      OdeConfig cfg;
      cfg.tol = tol;
      cache->from_u0 = d.u0.is_zero() ? SpectralState{} : ode_oracle(1.0, 0.0, fr, t, cfg);
      cache->from_u1 = d.u1.is_zero() ? SpectralState{} : ode_oracle(0.0, 1.0, fr, t, cfg);
      cache->r = r;
    }
    const SpectralState s{a * cache->from_u0.u_hat + b * cache->from_u1.u_hat,
                          a * cache->from_u0.v_hat + b * cache->from_u1.v_hat};
    return q == Quantity::energy ? 2.0 * energy_e0(s, fr) : std::norm(s.u_hat);
  };
}

double data_integral(const InitialData& d, const PointwiseFn& f, double t, double tol,
                     std::size_t max_panels = 2'000'000) {
  check_pair(d);
  SpectralIntegralOptions opts;
  opts.t = t;
  opts.angular = d.needs_angular();
  opts.tol = tol;
  opts.max_panels = max_panels;
  return spectral_integral(d.dim(), f, opts);
}

// Each oracle-driven evaluation costs a full RK4 run, so these integrals get
// a budget that fails fast instead of grinding.
constexpr std::size_t kOraclePanels = 20'000;

// With u0 = 0 the low-frequency |u_hat|^2 carries sin^2(w t); sampling its
// crests measures the envelope instead of an aliased oscillation.
std::vector<double> l2_sample_times(const InitialData& d, std::span<const double> times,
                                    PropagatorMode mode) {
  if (d.u0.is_zero()) return crest_times(times, mode);
  return {times.begin(), times.end()};
}

Trace trace_of(std::span<const double> times, std::string label,
               const std::function<double(double)>& value) {
  Trace tr;
  tr.label = std::move(label);
  tr.times.assign(times.begin(), times.end());
  tr.values.reserve(times.size());
  for (double t : times) tr.values.push_back(value(t));
  tr.validate();
  return tr;
}

double min_value(const std::vector<double>& v) { return *std::min_element(v.begin(), v.end()); }
double max_value(const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); }

// Smallest sample-to-sample decrease, allowing relative rounding.
double monotone_margin(const Trace& tr) {
  double margin = kInf;
  for (std::size_t i = 1; i < tr.values.size(); ++i) {
    const double prev = tr.values[i - 1];
    margin = std::min(margin, prev - tr.values[i] + 1e-12 * std::abs(prev));
  }
  return margin;
}

bool has_mass(const DataProfile& p) { return std::abs(p.mass()) > 1e-12 * std::max(1.0, p.l1()); }

void add_settings(ExperimentReport& rep, const ExperimentSettings& s, PropagatorMode mode) {
  rep.add_parameter("n", std::to_string(s.dim));
  rep.add_parameter("mode", to_string(mode));
  rep.add_parameter("u0", s.u0);
  rep.add_parameter("u1", s.u1);
  rep.add_parameter("t_lo", s.grid.lo);
  rep.add_parameter("t_hi", s.grid.hi);
  rep.add_parameter("t_count", std::to_string(s.grid.count));
  rep.add_parameter("spacing", s.grid.spacing == Spacing::log ? "log" : "linear");
  rep.add_parameter("tol", s.tol);
  rep.add_parameter("seed", std::to_string(s.seed));
  rep.add_parameter("plancherel_factor", plancherel_factor(s.dim));
}

InitialData load_data(const ExperimentSettings& s) {
  return {make_profile(s.u0, s.dim), make_profile(s.u1, s.dim)};
}

DecayFit add_fit(ExperimentReport& rep, const Trace& tr, FitModel model) {
  const DecayFit fit = fit_rate(tr, model, tr.times.front(), tr.times.back());
  rep.fits.push_back({tr.label, fit});
  return fit;
}

// Exponent checks shared by the energy and L^2 traces: -N/2 for data with
// mass, at most -(N+2)/2 when both masses vanish.
Check exponent_check(const std::string& what, double rate, int dim, bool massive) {
  const double half = 0.5 * dim;
  if (massive) {
    return make_check(fmt::format("{} decays like t^(-N/2): fitted power {:.4f} within 0.1 of {}",
                                  what, rate, -half),
                      0.1 - std::abs(rate + half));
  }
  const double cap = -(half + 1.0) + 0.1;
  return make_check(
      fmt::format("{} for zero-mass data decays at least like t^(-(N+2)/2): fitted power {:.4f} <= {}",
                  what, rate, cap),
      cap - rate);
}

// Closed-form traces recomputed from oracle states at the first five samples.
Check spot_check(const InitialData& d, const Trace& tr, Quantity q, double tol) {
  double worst = 0.0;
  const std::size_t n = std::min<std::size_t>(5, tr.times.size());
  for (std::size_t i = 0; i < n; ++i) {
    const double t = tr.times[i];
    const double oracle = data_integral(d, oracle_density(d, t, q, 1e-10), t, tol, kOraclePanels);
    worst = std::max(worst, std::abs(oracle - tr.values[i]) / std::abs(tr.values[i]));
  }
  return make_check(fmt::format("{} matches the RK4 oracle at {} spot times (max rel err {:.3e})",
                                tr.label, n, worst),
                    1e-6 - worst);
}

double ratio_window_margin(const Trace& tr, double limit) {
  return limit - max_value(tr.values) / min_value(tr.values);
}

std::vector<double> random_xi(UniformSource& rng, int dim, double radius) {
  std::vector<double> xi(static_cast<std::size_t>(dim));
  const double scale = radius / std::sqrt(static_cast<double>(dim));
  for (double& x : xi) x = scale * rng.next();
  return xi;
}

}  // namespace

std::vector<double> make_times(const TimeGrid& g) {
  if (!(g.lo > 0.0) || !(g.hi > g.lo) || g.count < 2) {
    throw std::invalid_argument("time grid: need 0 < t_lo < t_hi and count >= 2");
  }
  std::vector<double> out(g.count);
  const double last = static_cast<double>(g.count - 1);
  for (std::size_t i = 0; i < g.count; ++i) {
    const double f = static_cast<double>(i) / last;
    out[i] = g.spacing == Spacing::log ? g.lo * std::pow(g.hi / g.lo, f) : g.lo + f * (g.hi - g.lo);
  }
  out.back() = g.hi;
  return out;
}

std::vector<double> crest_times(std::span<const double> times, PropagatorMode mode) {
  const double period = kPi / oscillation_frequency(mode);  // of sin^2
  std::vector<double> out;
  for (double t : times) {
    const double k = std::max(0.0, std::round(t / period - 0.5));
    const double crest = (k + 0.5) * period;
    if (out.empty() || crest > out.back()) out.push_back(crest);
  }
  return out;
}

Check make_check(std::string description, double margin) {
  return {std::move(description), margin >= 0.0, margin};
}

bool ExperimentReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

void ExperimentReport::add_parameter(std::string key, std::string value) {
  parameters.emplace_back(std::move(key), std::move(value));
}

void ExperimentReport::add_parameter(std::string key, double value) {
  parameters.emplace_back(std::move(key), fmt::format("{}", value));
}

double plancherel_factor(int dim) { return std::pow(2.0 * kPi, -dim); }

const char* to_string(Region region) {
  switch (region) {
    case Region::low:
      return "low";
    case Region::high:
      return "high";
    case Region::all:
      return "all";
  }
  return "all";
}

double spectral_integral(int dim, const PointwiseFn& f, const SpectralIntegralOptions& o) {
  if (dim < 2) throw std::invalid_argument("spectral_integral: dimension must be at least 2");
  const double sphere_ratio = surface_area(dim) / surface_area(dim - 1);
  Integrand radial([&](double r) {
    const double avg = o.angular ? angular_average(dim, r, f, sphere_ratio) : f(r, r);
    return avg * std::pow(r, dim - 1);
  });
  const auto pts = seed_points(o.t, o.region, o.oscillatory);
  const QuadTolerance tol{0.0, o.tol, o.max_panels};
  const QuadResult res =
      o.region == Region::low ? integrate(radial, pts, tol) : integrate_to_infinity(radial, pts, tol);
  return plancherel_factor(dim) * surface_area(dim) * res.value;
}

bool InitialData::needs_angular() const {
  return !u0.is_zero() && !u1.is_zero() && (!u0.radial() || !u1.radial());
}

double total_energy(const InitialData& d, double t, PropagatorMode mode, double tol) {
  return data_integral(d, closed_density(d, t, mode, Quantity::energy), t, tol);
}

double squared_l2(const InitialData& d, double t, PropagatorMode mode, double tol) {
  return data_integral(d, closed_density(d, t, mode, Quantity::l2), t, tol);
}

double total_energy_oracle(const InitialData& d, double t, double tol) {
  return data_integral(d, oracle_density(d, t, Quantity::energy, 1e-10), t, tol, kOraclePanels);
}

double squared_l2_oracle(const InitialData& d, double t, double tol) {
  return data_integral(d, oracle_density(d, t, Quantity::l2, 1e-10), t, tol, kOraclePanels);
}

Trace energy_trace(const InitialData& d, std::span<const double> times, PropagatorMode mode,
                   double tol) {
  return trace_of(times, "energy", [&](double t) { return total_energy(d, t, mode, tol); });
}

Trace l2_trace(const InitialData& d, std::span<const double> times, PropagatorMode mode,
               double tol) {
  return trace_of(times, "l2_squared", [&](double t) { return squared_l2(d, t, mode, tol); });
}

double energy_identity_residual(const InitialData& d, double t, PropagatorMode mode, double tol) {
  if (!(t > 0.0)) throw std::invalid_argument("energy_identity_residual: need t > 0");
  const double e_start = 0.5 * total_energy(d, 0.0, mode, tol);
  const double e_now = 0.5 * total_energy(d, t, mode, tol);

  std::vector<double> slices;
  for (double s = 0.0; s < t; s += 0.5) slices.push_back(s);
  slices.push_back(t);

  PointwiseFn dissipation = [&](double r, double xi1) {
    const cplx a = d.u0.hat_polar(r, xi1);
    const cplx b = d.u1.hat_polar(r, xi1);
    if (a == 0.0 && b == 0.0) return 0.0;
    const Frequency fr(r);
    Integrand speed([&](double s) { return std::norm(propagate_closed(a, b, fr, s, mode).v_hat); });
    return log_symbol(fr) * integrate(speed, slices, QuadTolerance{0.0, 1e-13}).value;
  };
  const double dissipated = data_integral(d, dissipation, t, tol);
  return std::abs(e_now + dissipated - e_start) / e_start;
}

double profile_error(const DataProfile& u1, double t, Region region, double tol) {
  const int dim = u1.dim();
  if (region != Region::low && !(t > 0.5 * dim)) {
    throw std::invalid_argument("profile_error: F3 is square integrable at high frequency only for t > N/2");
  }
  if (t < 0.0) throw std::invalid_argument("profile_error: need t >= 0");
  PointwiseFn f = [&u1, t, dim](double r, double xi1) {
    std::vector<double> xi(static_cast<std::size_t>(dim), 0.0);
    xi[0] = xi1;
    xi[1] = std::sqrt(std::max(0.0, r * r - xi1 * xi1));
    const ProfileTerms terms = profile_terms(u1, xi, t);
    return std::norm(terms.u_hat - terms.f3);
  };
  SpectralIntegralOptions opts;
  opts.region = region;
  opts.t = t;
  opts.oscillatory = true;
  opts.angular = !u1.radial();
  opts.tol = tol;
  return spectral_integral(dim, f, opts);
}

Trace profile_error_trace(const DataProfile& u1, std::span<const double> times, Region region,
                          double tol) {
  return trace_of(times, fmt::format("profile_error_{}", to_string(region)),
                  [&](double t) { return profile_error(u1, t, region, tol); });
}

Trace optimality_trace(int dim, std::span<const double> times) {
  return trace_of(times, "optimality_normalized", [dim](double t) {
    return optimality_integral(dim, t) * std::pow(t, 0.5 * dim);
  });
}

UniformSource::UniformSource(std::uint64_t seed) : engine_(seed) {}

double UniformSource::next() {
  const double unit = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  return 2.0 * unit - 1.0;
}

cplx UniformSource::next_complex() {
  const double re = next();
  return {re, next()};
}

std::vector<Check> inequality_sweep(PropagatorMode mode, std::uint64_t seed, const SweepGrid& g) {
  if (g.radii < 2 || g.times < 2 || g.states == 0) {
    throw std::invalid_argument("inequality_sweep: grid too small");
  }
  UniformSource rng(seed);
  double equiv = kInf, lyapunov = -kInf, derived = -kInf, identity = 0.0, e0_identity = 0.0;
  double monotone = kInf, first = kInf, second = kInf;

  for (std::size_t k = 0; k < g.states; ++k) {
    const cplx u0 = rng.next_complex();
    const cplx u1 = rng.next_complex();
    const SpectralState s0{u0, u1};
    for (std::size_t i = 0; i < g.radii; ++i) {
      const Frequency fr(g.r_max * static_cast<double>(i) / static_cast<double>(g.radii - 1));
      const SymbolValues sv = symbol_values(fr);
      const double c = sv.L * sv.L + kPi * kPi;
      double prev_e0 = energy_e0(s0, fr);
      for (std::size_t j = 0; j < g.times; ++j) {
        const double t = g.t_max * static_cast<double>(j) / static_cast<double>(g.times - 1);
        const SpectralState s = propagate_closed(u0, u1, fr, t, mode);
        const cplx acc = closed_acceleration(u0, u1, fr, t, mode);
        const EnergyDensities d = energy_densities(s, fr);
        const double rate = energy_e_rate(s, acc, fr);

        equiv = std::min({equiv, d.e - 0.5 * d.e0, 2.25 * d.e0 - d.e});
        lyapunov = std::max(lyapunov, rate + sv.phi * d.e);
        derived = std::max(derived, d.rsrc - d.f + sv.phi * d.e);
        identity = std::max(identity, std::abs(rate + d.f - d.rsrc));
        e0_identity = std::max(e0_identity,
                               std::abs(energy_e0_rate(s, acc, fr) + sv.L * std::norm(s.v_hat)));
        if (j > 0) monotone = std::min(monotone, prev_e0 - d.e0 + 1e-14 * prev_e0);
        prev_e0 = d.e0;
        first = std::min(first, pointwise_bound_margin(s0, s, fr, t) + 2e-12);
        const double cap = 18.0 * (std::norm(u1) / c + 0.25 * std::norm(u0)) * std::exp(-sv.phi * t);
        second = std::min(second, cap + 1e-12 - std::norm(s.u_hat));
      }
    }
  }

  return {
      make_check("energy-equivalence proposition: E0/2 <= E <= 9 E0/4 along trajectories", equiv + 1e-12),
      make_check(fmt::format("Lyapunov proposition: dE/dt + phi E <= 1e-10 with the exact derivative "
                             "(worst {:.3e})",
                             lyapunov),
                 1e-10 - lyapunov),
      make_check(fmt::format("energy-method identity dE/dt + F = R with the exact derivative "
                             "(worst residual {:.3e})",
                             identity),
                 1e-10 - identity),
      make_check("energy-method closing step: R - F + phi E <= 0", 1e-12 - derived),
      make_check("pointwise energy identity: dE0/dt + L |v|^2 = 0", 1e-10 - e0_identity),
      make_check("pointwise energy identity: E0 non-increasing in t", monotone),
      make_check("pointwise decay proposition: E0(t) <= (9/2) E0(0) exp(-phi t)", first),
      make_check("pointwise decay proposition: |u|^2 <= 18 (|u1|^2/(L^2+pi^2) + |u0|^2/4) exp(-phi t)",
                 second),
  };
}

std::vector<Check> algebraic_equivalence_sweep(std::size_t count, std::uint64_t seed) {
  UniformSource rng(seed);
  double lower = kInf, upper = kInf;
  for (std::size_t k = 0; k < count; ++k) {
    const double pick = rng.next();
    const double r = k % 2 == 0 ? 5.0 * (pick + 1.0) : std::pow(10.0, 3.0 * pick);
    const Frequency fr(r);
    const SpectralState s{rng.next_complex(), rng.next_complex()};
    const double e0 = energy_e0(s, fr);
    const double e = energy_e(s, fr);
    lower = std::min(lower, (e - 0.5 * e0) / e0);
    upper = std::min(upper, (2.25 * e0 - e) / e0);
  }
  return {
      make_check(fmt::format("energy-equivalence proposition: E >= E0/2 on {} random states", count),
                 lower + 1e-12),
      make_check(fmt::format("energy-equivalence proposition: E <= 9 E0/4 on {} random states", count),
                 upper + 1e-12),
  };
}

OracleComparison oracle_equivalence(std::uint64_t seed, std::size_t states, double r_max,
                                    double t_max, const OdeConfig& cfg) {
  UniformSource rng(seed);
  std::vector<double> times;
  for (std::size_t j = 0; 0.5 * static_cast<double>(j) <= t_max; ++j) {
    times.push_back(0.5 * static_cast<double>(j));
  }
  OracleComparison out;
  for (std::size_t k = 0; k < states; ++k) {
    const cplx u0 = rng.next_complex();
    const cplx u1 = rng.next_complex();
    for (std::size_t i = 0; 0.1 * static_cast<double>(i) <= r_max + 1e-12; ++i) {
      const Frequency fr(0.1 * static_cast<double>(i));
      const auto numeric = ode_oracle_trace(u0, u1, fr, times, cfg);
      for (std::size_t j = 0; j < times.size(); ++j) {
        const SpectralState exact = propagate_closed(u0, u1, fr, times[j]);
        const double scale = std::sqrt(std::norm(exact.u_hat) + std::norm(exact.v_hat));
        const double diff = std::sqrt(std::norm(exact.u_hat - numeric[j].u_hat) +
                                      std::norm(exact.v_hat - numeric[j].v_hat));
        out.max_rel_error = std::max(out.max_rel_error, diff / scale);
        ++out.comparisons;
      }
    }
  }
  return out;
}

ExperimentReport simulate_experiment(const ExperimentSettings& s) {
  ExperimentReport rep;
  rep.name = "simulate";
  add_settings(rep, s, s.mode);
  const InitialData d = load_data(s);
  const auto times = make_times(s.grid);

  rep.traces.push_back(energy_trace(d, times, s.mode, s.tol));
  rep.traces.push_back(l2_trace(d, l2_sample_times(d, times, s.mode), s.mode, s.tol));
  rep.plots.push_back({"energy", PlotAxes::loglog, {}});
  rep.plots.push_back({"l2_squared", PlotAxes::loglog, {}});

  if (s.mode == PropagatorMode::ode) {
    rep.checks.push_back(make_check("energy theorem: energy trace non-increasing",
                                    monotone_margin(rep.traces[0])));
    rep.checks.push_back(spot_check(d, rep.traces[0], Quantity::energy, s.tol));
    rep.checks.push_back(spot_check(d, rep.traces[1], Quantity::l2, s.tol));
    for (double t : {1.0, 5.0, 10.0}) {
      const double res = energy_identity_residual(d, t, s.mode);
      rep.checks.push_back(make_check(
          fmt::format("energy identity: relative residual at t = {} is {:.3e}", t, res), 1e-6 - res));
    }
  } else {
    rep.add_parameter("note", "paper-mode states do not solve the equation; oracle and identity checks skipped");
  }
  return rep;
}

ExperimentReport decay_experiment(const ExperimentSettings& s) {
  ExperimentReport rep;
  rep.name = "decay";
  add_settings(rep, s, s.mode);
  const InitialData d = load_data(s);
  const auto times = make_times(s.grid);
  const bool massive = has_mass(d.u0) || has_mass(d.u1);

  const Trace energy = energy_trace(d, times, s.mode, s.tol);
  const DecayFit efit = add_fit(rep, energy, FitModel::power);
  rep.checks.push_back(exponent_check("energy theorem: total energy", efit.rate, s.dim, massive));
  if (s.mode == PropagatorMode::ode) {
    rep.checks.push_back(
        make_check("energy theorem: energy trace non-increasing", monotone_margin(energy)));
  }

  const auto l2_times = l2_sample_times(d, times, s.mode);
  const Trace l2 = l2_trace(d, l2_times, s.mode, s.tol);
  const DecayFit lfit = add_fit(rep, l2, FitModel::power);
  rep.checks.push_back(exponent_check("L2 proposition: squared norm", lfit.rate, s.dim, massive));
  rep.add_parameter("energy_exponent", efit.rate);
  rep.add_parameter("l2_squared_exponent", lfit.rate);
  rep.add_parameter("l2_norm_exponent", 0.5 * lfit.rate);
  rep.add_parameter("l2_norm_exponent_stated", -0.5 * s.dim);

  if (s.mode == PropagatorMode::ode) {
    rep.checks.push_back(spot_check(d, energy, Quantity::energy, s.tol));
    rep.checks.push_back(spot_check(d, l2, Quantity::l2, s.tol));
  }
  rep.traces.push_back(energy);
  rep.traces.push_back(l2);
  rep.plots.push_back({energy.label, PlotAxes::loglog, {}});
  rep.plots.push_back({l2.label, PlotAxes::loglog, {}});
  return rep;
}

ExperimentReport profile_experiment(const ExperimentSettings& s) {
  const DataProfile u0 = make_profile(s.u0, s.dim);
  if (!u0.is_zero()) throw ConfigInvalid("u0", "profile experiments require u0 = zero");
  ExperimentReport rep;
  rep.name = "profile";
  add_settings(rep, s, PropagatorMode::paper);
  const DataProfile u1 = make_profile(s.u1, s.dim);
  const int n = s.dim;
  const bool massive = has_mass(u1);
  UniformSource rng(s.seed);

  // Low frequencies.
  const auto times = make_times(s.grid);
  const Trace low = profile_error_trace(u1, times, Region::low, s.tol);
  const DecayFit lfit = add_fit(rep, low, FitModel::power);
  const double stated = massive ? -0.5 * (n - 2) : -0.5 * (n + 2);
  if (massive) {
    rep.checks.push_back(make_check(
        fmt::format("low-frequency profile theorem: fitted power {:.4f} within 0.1 of {}", lfit.rate,
                    stated),
        0.1 - std::abs(lfit.rate - stated)));
  } else {
    rep.checks.push_back(make_check(
        fmt::format("low-frequency profile theorem, zero mass: fitted power {:.4f} <= {}", lfit.rate,
                    stated + 0.1),
        stated + 0.1 - lfit.rate));
  }
  // Bound C t^stated calibrated on the first samples, then required to
  // dominate the whole window.
  double c_bound = 0.0;
  for (std::size_t i = 0; i < std::min<std::size_t>(8, low.times.size()); ++i) {
    c_bound = std::max(c_bound, low.values[i] * std::pow(low.times[i], -stated));
  }
  double dominate = kInf;
  for (std::size_t i = 0; i < low.times.size(); ++i) {
    dominate = std::min(dominate, 1.0 - low.values[i] / (c_bound * std::pow(low.times[i], stated)) + 1e-9);
  }
  rep.checks.push_back(make_check(
      fmt::format("low-frequency profile theorem: calibrated bound C t^({}) dominates the trace", stated),
      dominate));
  rep.add_parameter("low_power", lfit.rate);
  rep.add_parameter("low_bound_power", stated);
  rep.add_parameter("low_bound_constant", c_bound);

  // High frequencies.
  const TimeGrid high_grid{20.0, 200.0, 40, Spacing::linear};
  const auto htimes = make_times(high_grid);
  const Trace high = profile_error_trace(u1, htimes, Region::high, s.tol);
  const DecayFit hfit = add_fit(rep, high, FitModel::exponential);
  const double slope_cap = -std::min(8.0 / 9.0, 2.0 / 3.0 * std::log(2.0)) + 0.05;
  rep.checks.push_back(make_check(
      fmt::format("high-frequency profile theorem: log-linear slope {:.4f} <= {:.4f}", hfit.rate, slope_cap),
      slope_cap - hfit.rate));
  rep.add_parameter("high_slope", hfit.rate);

  // Regions partition frequency space.
  double split = 0.0;
  for (std::size_t i = 0; i < 8; ++i) {
    const double t = htimes[i];
    const double all = profile_error(u1, t, Region::all, s.tol);
    const double parts = low.values.empty() ? 0.0 : profile_error(u1, t, Region::low, s.tol) + high.values[i];
    split = std::max(split, std::abs(all - parts) / all);
  }
  rep.checks.push_back(make_check(
      fmt::format("region split: all = low + high (max rel gap {:.3e})", split), 1e-8 - split));

  // Decomposition of u_hat into F1 + F2 + F3, for this datum and a
  // non-radial one.
  const DataProfile shifted = make_profile("shifted_gaussian:offset=1", n);
  double exact = 0.0, bound = kInf, theta_gap = 0.0, lemma_a = 0.0, lemma_b = 0.0;
  std::size_t roots = 0, root_attempts = 0;
  for (const DataProfile* p : {&u1, &shifted}) {
    for (int k = 0; k < 200; ++k) {
      const auto xi = random_xi(rng, n, 2.0);
      const double t = 25.0 * (rng.next() + 1.0);
      const ProfileTerms terms = profile_terms(*p, xi, t);
      const double scale = std::max(1.0, std::abs(terms.u_hat));
      exact = std::max(exact, std::abs(terms.u_hat - (terms.f1 + terms.f2 + terms.f3)) / scale);
      double r2 = 0.0;
      for (double x : xi) r2 += x * x;
      const Frequency fr(std::sqrt(r2));
      const double cap = f2_bound(*p, fr, t);
      bound = std::min(bound, cap * (1.0 + 1e-12) + 1e-15 - std::abs(terms.f2));

      // A theta in [0, 1] reproducing the exact remainder in mean-value form.
      if (cap == 0.0) continue;
      ++root_attempts;
      const auto gap = [&](double th) {
        return profile_terms(*p, xi, t, ThetaPolicy{th}).f2.real() - terms.f2.real();
      };
      constexpr int kScan = 4000;
      double prev = gap(0.0);
      for (int j = 1; j <= kScan; ++j) {
        const double hi_th = static_cast<double>(j) / kScan;
        const double cur = gap(hi_th);
        if ((prev <= 0.0) != (cur <= 0.0)) {
          double a = hi_th - 1.0 / kScan, b = hi_th, fa = prev;
          for (int it = 0; it < 200 && b - a > 1e-16; ++it) {
            const double m = 0.5 * (a + b);
            const double fm = gap(m);
            if ((fa <= 0.0) == (fm <= 0.0)) {
              a = m;
              fa = fm;
            } else {
              b = m;
            }
          }
          const double th = 0.5 * (a + b);
          const cplx mv = profile_terms(*p, xi, t, ThetaPolicy{th}).f2;
          theta_gap = std::max(theta_gap, std::abs(mv - terms.f2) / (1.0 + cap));
          ++roots;
          break;
        }
        prev = cur;
      }
    }
    for (int k = 0; k < 1000; ++k) {
      const auto xi = random_xi(rng, n, 2.0);
      double r2 = 0.0;
      for (double x : xi) r2 += x * x;
      const double r = std::sqrt(r2);
      if (r == 0.0) continue;
      const Decomposition ab = decompose(*p, xi);
      lemma_a = std::max(lemma_a, std::abs(ab.A) / (r * p->l11()));
      lemma_b = std::max(lemma_b, std::abs(ab.B) / (r * p->l11()));
    }
  }
  rep.checks.push_back(make_check(
      fmt::format("profile decomposition: u_hat = F1 + F2 + F3 (max rel gap {:.3e})", exact), 1e-12 - exact));
  rep.checks.push_back(make_check("profile decomposition: |F2| within the mean-value bound", bound));
  const double found = root_attempts == 0 ? 1.0 : static_cast<double>(roots) / root_attempts;
  rep.checks.push_back(make_check(
      fmt::format("profile decomposition: mean-value form at the theta root matches F2 "
                  "({} of {} roots bracketed, max gap {:.3e})",
                  roots, root_attempts, theta_gap),
      std::min(1e-12 - theta_gap, found - 0.9)));
  rep.checks.push_back(make_check(
      fmt::format("cosine-moment lemma: |A| <= |xi| ||u1||_(1,1) (max ratio {:.4f})", lemma_a), 1.0 - lemma_a));
  rep.checks.push_back(make_check(
      fmt::format("sine-moment lemma: |B| <= |xi| ||u1||_(1,1) (max ratio {:.4f})", lemma_b), 1.0 - lemma_b));
  rep.add_parameter("lemma_K_measured", lemma_a);
  rep.add_parameter("lemma_M_measured", lemma_b);
  rep.add_parameter("theta_roots_found", static_cast<double>(roots));

  rep.traces = {low, high};
  rep.plots.push_back({low.label, PlotAxes::loglog, {}});
  rep.plots.push_back({high.label, PlotAxes::semilogy, {}});
  return rep;
}

ExperimentReport optimality_experiment(const ExperimentSettings& s) {
  ExperimentReport rep;
  rep.name = "optimality";
  add_settings(rep, s, PropagatorMode::paper);
  const int n = s.dim;
  const double half = 0.5 * n;
  const auto times = make_times(s.grid);

  const Trace norm = optimality_trace(n, times);
  Trace raw{norm.times, {}, "optimality_raw"};
  for (std::size_t i = 0; i < norm.times.size(); ++i) {
    raw.values.push_back(norm.values[i] * std::pow(norm.times[i], -half));
  }
  const DecayFit fit = add_fit(rep, raw, FitModel::power);
  rep.checks.push_back(make_check(
      fmt::format("optimality theorem: fitted power {:.4f} within 0.05 of {}", fit.rate, -half),
      0.05 - std::abs(fit.rate + half)));

  const double c_lo = min_value(norm.values);
  const double c_hi = max_value(norm.values);
  rep.checks.push_back(make_check("optimality theorem: normalized trace positive", c_lo));
  rep.checks.push_back(make_check(
      fmt::format("optimality theorem: window ratio {:.4f} <= 3", c_hi / c_lo), 3.0 - c_hi / c_lo));

  const double w = surface_area(n);
  const double a_n = a_const(n);
  const double f_n = f_osc(n, times.back());
  constexpr double kEps = 0.05;
  const double lower = (a_n - f_n) * w * (1.0 - kEps);
  rep.checks.push_back(make_check(
      fmt::format("optimality theorem: lower window {:.6f} >= (A_N - F_N(t_max)) w_N (1 - {}) = {:.6f}",
                  c_lo, kEps, lower),
      c_lo - lower));

  double majorant = kInf;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double t = times[i];
    const double cap = w * (integral_Ip(n - 1, t) + integral_Jp(n - 1, t)) * std::pow(t, half);
    majorant = std::min(majorant, cap - norm.values[i]);
  }
  rep.checks.push_back(make_check("optimality theorem: sin^2 <= 1 majorant w_N (I + J) t^(N/2)", majorant));

  double subst = 0.0;
  for (double t : {times.front(), std::sqrt(times.front() * times.back()), times.back()}) {
    const double direct = optimality_integral(n, t);
    subst = std::max(subst, std::abs(substitution_oracle(n, t) - direct) / direct);
  }
  rep.checks.push_back(make_check(
      fmt::format("optimality integral: substitution oracle agreement {:.3e}", subst), 1e-8 - subst));

  const double gamma_half = 0.5 * std::tgamma(half);
  rep.checks.push_back(make_check("Gaussian moment: A_N = Gamma(N/2)/2 to 1e-10",
                                  1e-10 - std::abs(a_n - gamma_half)));
  rep.checks.push_back(make_check(
      fmt::format("oscillatory moment: |F_N(t_max) - A_N/2| = {:.3e} < 5e-3", std::abs(f_n - 0.5 * a_n)),
      5e-3 - std::abs(f_n - 0.5 * a_n)));

  rep.add_parameter("A_N", a_n);
  rep.add_parameter("F_N_t_max", f_n);
  rep.add_parameter("surface_area", w);
  rep.add_parameter("c_lo", c_lo);
  rep.add_parameter("c_hi", c_hi);
  rep.add_parameter("lower_bound", lower);
  rep.add_parameter("epsilon", kEps);

  rep.traces = {norm, raw};
  rep.plots.push_back({norm.label, PlotAxes::loglog, {c_lo, c_hi, lower}});
  rep.plots.push_back({raw.label, PlotAxes::loglog, {}});
  return rep;
}

ExperimentReport lemmas_experiment(const ExperimentSettings& s) {
  ExperimentReport rep;
  rep.name = "lemmas";
  add_settings(rep, s, s.mode);

  for (auto& c : algebraic_equivalence_sweep(10'000, s.seed)) rep.checks.push_back(std::move(c));
  for (auto& c : inequality_sweep(s.mode, s.seed)) rep.checks.push_back(std::move(c));

  // Multiplier facts.
  UniformSource rng(s.seed);
  double rho_cap = kInf, root_residual = 0.0;
  for (int k = 0; k < 100'000; ++k) {
    const Frequency fr(std::pow(10.0, 3.0 * rng.next()));
    const SymbolValues sv = symbol_values(fr);
    rho_cap = std::min(rho_cap, (sv.L * sv.L / 16.0 - sv.rho * sv.rho) / (sv.L * sv.L) + 1e-15);
    const auto [lp, lm] = char_roots(fr);
    const double scale = 1.0 + std::norm(lp);
    root_residual = std::max({root_residual, std::abs(char_poly(lp, fr)) / scale,
                              std::abs(char_poly(lm, fr)) / scale});
  }
  rep.checks.push_back(make_check("multiplier lemma: rho^2 <= L^2/16", rho_cap));
  rep.checks.push_back(make_check(
      fmt::format("characteristic roots solve the quadratic (max rel residual {:.3e})", root_residual),
      1e-12 - root_residual));
  const Frequency probe(1.0);
  rep.add_parameter("paper_root_residual",
                    std::abs(char_poly(char_roots(probe, PropagatorMode::paper).first, probe)));

  const OracleComparison oc = oracle_equivalence(s.seed);
  rep.checks.push_back(make_check(
      fmt::format("closed-form propagator matches the RK4 oracle ({} comparisons, max rel err {:.3e})",
                  oc.comparisons, oc.max_rel_error),
      1e-8 - oc.max_rel_error));

  // Model integrals.
  double anchor = 0.0;
  for (double t : {2.0, 5.0, 11.0, 101.0}) {
    const double tail = std::exp2(1.0 - t) / (2.0 * (t - 1.0));
    const double i1 = 1.0 / (2.0 * (t - 1.0)) - tail;
    anchor = std::max({anchor, std::abs(integral_Ip(1.0, t) - i1) / i1,
                       std::abs(integral_Jp(1.0, t) - tail) / tail});
  }
  rep.checks.push_back(make_check(
      fmt::format("model-integral lemmas: I_1, J_1 closed forms (max rel err {:.3e})", anchor),
      1e-12 - anchor));

  const auto itimes = make_times({50.0, 5000.0, 40, Spacing::log});
  const Trace i0 = trace_of(itimes, "lemma_I0_normalized",
                            [](double t) { return integral_Ip(0.0, t) * std::sqrt(t); });
  const auto jtimes = make_times({50.0, 200.0, 40, Spacing::log});
  const Trace j2 = trace_of(jtimes, "lemma_J2_normalized",
                            [](double t) { return integral_Jp(2.0, t) * (t - 1.0) * std::exp2(t); });
  for (const Trace* tr : {&i0, &j2}) {
    rep.checks.push_back(make_check(fmt::format("model-integral lemmas: {} positive", tr->label),
                                    min_value(tr->values)));
    rep.checks.push_back(make_check(
        fmt::format("model-integral lemmas: {} window ratio {:.4f} <= 3", tr->label,
                    max_value(tr->values) / min_value(tr->values)),
        ratio_window_margin(*tr, 3.0)));
    rep.plots.push_back({tr->label, PlotAxes::loglog,
                         {min_value(tr->values), max_value(tr->values)}});
  }
  rep.traces = {i0, j2};
  return rep;
}

}  // namespace logdamp
