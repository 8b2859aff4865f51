#include "logdamp/fit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "logdamp/errors.hpp"

namespace logdamp {

void Trace::validate() const {
  if (times.size() != values.size()) {
    throw std::invalid_argument("trace '" + label + "': times and values differ in length");
  }
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw std::invalid_argument("trace '" + label + "': non-finite value");
    }
    if (!(times[i] > 0.0) || (i > 0 && !(times[i] > times[i - 1]))) {
      throw std::invalid_argument("trace '" + label + "': times must be positive and increasing");
    }
  }
}

const char* to_string(FitModel model) {
  return model == FitModel::power ? "power" : "exponential";
}

DecayFit fit_rate(const Trace& trace, FitModel model, double t_lo, double t_hi) {
  if (!(t_lo <= t_hi)) throw std::invalid_argument("fit_rate: empty window");
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t i = 0; i < trace.times.size(); ++i) {
    const double t = trace.times[i];
    if (t < t_lo || t > t_hi) continue;
    const double v = trace.values[i];
    if (!(v > 0.0)) {
      throw NonPositiveValues("fit_rate: trace '" + trace.label + "' has value " +
                              std::to_string(v) + " at t=" + std::to_string(t));
    }
    xs.push_back(model == FitModel::power ? std::log(t) : t);
    ys.push_back(std::log(v));
  }
  if (xs.size() < kMinFitSamples) {
    throw InsufficientData("fit_rate: " + std::to_string(xs.size()) + " samples in window, need " +
                           std::to_string(kMinFitSamples));
  }

  const auto n = static_cast<double>(xs.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (!(sxx > 0.0)) throw InsufficientData("fit_rate: all samples at one time");

  DecayFit fit;
  fit.model = model;
  fit.rate = sxy / sxx;
  fit.intercept = my - fit.rate * mx;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    fit.max_residual = std::max(fit.max_residual, std::abs(ys[i] - fit.intercept - fit.rate * xs[i]));
  }
  fit.t_lo = t_lo;
  fit.t_hi = t_hi;
  fit.samples = xs.size();
  return fit;
}

}  // namespace logdamp
