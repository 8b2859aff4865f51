#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace logdamp {

// Sampled scalar series on a strictly increasing positive time grid.
struct Trace {
  std::vector<double> times;
  std::vector<double> values;
  std::string label;

  // Throws std::invalid_argument unless the invariants hold.
  void validate() const;
};

enum class FitModel { power, exponential };

const char* to_string(FitModel model);

// Least-squares line through (log t, log v) for the power model or (t, log v)
// for the exponential model. `rate` is the slope; max_residual is the largest
// absolute residual in those coordinates.
struct DecayFit {
  FitModel model = FitModel::power;
  double rate = 0.0;
  double intercept = 0.0;
  double max_residual = 0.0;
  double t_lo = 0.0;
  double t_hi = 0.0;
  std::size_t samples = 0;
};

inline constexpr std::size_t kMinFitSamples = 8;

// Fits the samples with t in [t_lo, t_hi]. Throws InsufficientData with fewer
// than kMinFitSamples samples and NonPositiveValues when a value cannot be
// logged.
DecayFit fit_rate(const Trace& trace, FitModel model, double t_lo, double t_hi);

}  // namespace logdamp
