#include "logdamp/data_catalog.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "logdamp/errors.hpp"
#include "logdamp/propagator.hpp"
#include "logdamp/quadrature.hpp"

namespace logdamp {
namespace {

double squared_norm(std::span<const double> xi) {
  double s = 0.0;
  for (double x : xi) s += x * x;
  return s;
}

double parse_number(std::string_view text, std::string_view field) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || !std::isfinite(value)) {
    throw ConfigInvalid(std::string(field), "not a number: '" + std::string(text) + "'");
  }
  return value;
}

// Radial integral w_N int_0^inf g(r) r^(N-1) dr.
double radial_integral(int dim, const std::function<double(double)>& g, double tol) {
  Integrand f([&g, dim](double r) { return g(r) * std::pow(r, dim - 1); });
  const double bp[] = {0.0, 0.5, 1.0, 1.5, 2.0, 3.0, 4.0};
  return surface_area(dim) * integrate_to_infinity(f, bp, QuadTolerance{0.0, tol}).value;
}

// int |y + s e_1| exp(-|y|^2) dy in R^N, polar about the origin with the
// angle measured from e_1.
double shifted_first_moment(int dim, double s, double tol) {
  const double sphere = surface_area(dim - 1);
  const double pi = kPi;
  Integrand outer([=](double rr) {
    if (rr == 0.0) return 0.0;
    Integrand inner([=](double th) {
      const double d2 = rr * rr + 2.0 * rr * s * std::cos(th) + s * s;
      return std::sqrt(std::max(d2, 0.0)) * std::pow(std::sin(th), dim - 2);
    });
    const double angular = integrate(inner, 0.0, pi, 1e-13).value;
    return std::exp(-rr * rr) * std::pow(rr, dim - 1) * angular;
  });
  const double bp[] = {0.0, 1.0, 2.0, 3.0};
  return sphere * integrate_to_infinity(outer, bp, QuadTolerance{0.0, tol}).value;
}

}  // namespace

ProfileSpec ProfileSpec::parse(std::string_view text) {
  const auto colon = text.find(':');
  const std::string_view head = text.substr(0, colon);
  const std::string_view args = colon == std::string_view::npos ? "" : text.substr(colon + 1);

  const auto keyed = [&](std::string_view key, double fallback) {
    if (args.empty()) return fallback;
    const auto eq = args.find('=');
    if (eq == std::string_view::npos || args.substr(0, eq) != key) {
      throw ConfigInvalid("profile", "expected '" + std::string(key) + "=<value>' in '" +
                                         std::string(text) + "'");
    }
    return parse_number(args.substr(eq + 1), "profile");
  };

  ProfileSpec spec;
  if (head == "zero") {
    spec.kind = ProfileKind::zero;
  } else if (head == "gaussian") {
    spec.kind = ProfileKind::gaussian;
    spec.param = keyed("a", 1.0);
    if (!(spec.param > 0.0)) throw ConfigInvalid("profile", "gaussian needs a > 0");
  } else if (head == "zero_mean_pair") {
    spec.kind = ProfileKind::zero_mean_pair;
  } else if (head == "shifted_gaussian") {
    spec.kind = ProfileKind::shifted_gaussian;
    spec.param = keyed("offset", 1.0);
    if (!(spec.param > 0.0)) throw ConfigInvalid("profile", "shifted_gaussian needs offset > 0");
  } else {
    throw ConfigInvalid("profile", "unknown profile '" + std::string(text) + "'");
  }
  if (!args.empty() && (spec.kind == ProfileKind::zero || spec.kind == ProfileKind::zero_mean_pair)) {
    throw ConfigInvalid("profile", "'" + std::string(head) + "' takes no parameters");
  }
  return spec;
}

std::string ProfileSpec::descriptor() const {
  switch (kind) {
    case ProfileKind::zero:
      return "zero";
    case ProfileKind::gaussian:
      return fmt::format("gaussian:a={}", param);
    case ProfileKind::zero_mean_pair:
      return "zero_mean_pair";
    case ProfileKind::shifted_gaussian:
      return fmt::format("shifted_gaussian:offset={}", param);
  }
  return "zero";
}

DataProfile make_profile(const ProfileSpec& spec, int dim) {
  if (dim < 1) throw std::invalid_argument("make_profile: dimension must be positive");
  DataProfile p(spec, dim);
  const double n = dim;
  constexpr double kTol = 1e-12;
  switch (spec.kind) {
    case ProfileKind::zero:
      break;
    case ProfileKind::gaussian: {
      const double a = spec.param;
      p.mass_ = std::pow(kPi / a, 0.5 * n);
      p.l1_ = p.mass_;
      p.l11_ = radial_integral(dim, [a](double r) { return (1.0 + r) * std::exp(-a * r * r); }, kTol);
      p.l2_ = std::pow(kPi / (2.0 * a), 0.25 * n);
      break;
    }
    case ProfileKind::zero_mean_pair: {
      const double scale = std::pow(2.0, 0.5 * n);
      const auto u = [scale](double r) {
        return std::exp(-r * r) - scale * std::exp(-2.0 * r * r);
      };
      p.mass_ = 0.0;
      p.l1_ = radial_integral(dim, [u](double r) { return std::abs(u(r)); }, kTol);
      p.l11_ = radial_integral(dim, [u](double r) { return (1.0 + r) * std::abs(u(r)); }, kTol);
      p.l2_ = std::sqrt(std::pow(kPi, 0.5 * n) *
                        (std::pow(2.0, -0.5 * n) - 2.0 * std::pow(2.0 / 3.0, 0.5 * n) + 1.0));
      break;
    }
    case ProfileKind::shifted_gaussian: {
      p.mass_ = std::pow(kPi, 0.5 * n);
      p.l1_ = p.mass_;
      p.l11_ = p.mass_ + (dim == 1 ? 0.0 : shifted_first_moment(dim, spec.param, kTol));
      p.l2_ = std::pow(kPi / 2.0, 0.25 * n);
      break;
    }
  }
  return p;
}

DataProfile make_profile(std::string_view descriptor, int dim) {
  return make_profile(ProfileSpec::parse(descriptor), dim);
}

cplx DataProfile::hat_polar(double r, double xi1) const {
  const double n = dim_;
  const double r2 = r * r;
  switch (spec_.kind) {
    case ProfileKind::zero:
      return 0.0;
    case ProfileKind::gaussian:
      return mass_ * std::exp(-r2 / (4.0 * spec_.param));
    case ProfileKind::zero_mean_pair:
      return std::pow(kPi, 0.5 * n) * (std::exp(-0.25 * r2) - std::exp(-0.125 * r2));
    case ProfileKind::shifted_gaussian:
      return mass_ * std::exp(-0.25 * r2) * std::polar(1.0, -xi1 * spec_.param);
  }
  return 0.0;
}

cplx DataProfile::hat(std::span<const double> xi) const {
  if (static_cast<int>(xi.size()) != dim_) {
    throw std::invalid_argument("DataProfile::hat: xi has the wrong dimension");
  }
  return hat_polar(std::sqrt(squared_norm(xi)), xi[0]);
}

cplx DataProfile::hat_axis(double r) const { return hat_polar(r, r); }

Decomposition decompose(const DataProfile& profile, std::span<const double> xi) {
  const cplx h = profile.hat(xi);
  return {h.real() - profile.mass(), -h.imag()};
}

ProfileTerms profile_terms(const DataProfile& profile, std::span<const double> xi, double t,
                           ThetaPolicy policy) {
  const Frequency freq(std::sqrt(squared_norm(xi)));
  const double L = log_symbol(freq);
  const double root = std::sqrt(L);
  const double damp = std::exp(-0.5 * L * t);
  const double c = 4.0 / kPi;
  const double p1 = profile.mass();
  const cplx h = profile.hat(xi);
  const Decomposition ab = decompose(profile, xi);

  ProfileTerms out;
  out.u_hat = propagate_closed(0.0, h, freq, t, PropagatorMode::paper).u_hat;
  out.f1 = c * cplx(ab.A, -ab.B) * damp * std::sin(0.25 * kPi * t);
  out.f3 = c * p1 * damp * std::sin(t * root);
  if (policy.theta) {
    const double theta = *policy.theta;
    const double mu = theta * 0.25 * kPi + (1.0 - theta) * root;
    out.f2 = c * p1 * (0.25 * kPi - root) * damp * t * std::cos(mu * t);
  } else {
    out.f2 = out.u_hat - out.f1 - out.f3;
  }
  return out;
}

ProfileTerms profile_terms(const DataProfile& profile, Frequency freq, double t,
                           ThetaPolicy policy) {
  std::vector<double> xi(static_cast<std::size_t>(profile.dim()), 0.0);
  xi[0] = freq.r();
  return profile_terms(profile, xi, t, policy);
}

double f2_bound(const DataProfile& profile, Frequency freq, double t) {
  const double L = log_symbol(freq);
  return 4.0 / kPi * std::abs(profile.mass()) * std::abs(0.25 * kPi - std::sqrt(L)) *
         std::exp(-0.5 * L * t) * t;
}

}  // namespace logdamp
