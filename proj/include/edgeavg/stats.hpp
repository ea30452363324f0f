#pragma once

#include <cstdint>
#include <span>

namespace edgeavg {

struct Estimate {
  double point = 0.0;
  double standard_error = 0.0;
  std::int64_t sample_count = 0;
};

// Sample mean with standard error (sample sd / sqrt(n)). Requires at least
// two finite samples.
Estimate mean_ci(std::span<const double> samples);

// Sample variance with a moment-based standard error,
// sqrt((m4 - var^2) / n) from the central fourth moment.
Estimate variance_ci(std::span<const double> samples);

// Fraction of samples with |value| >= threshold, binomial standard error.
Estimate tail_prob(std::span<const double> samples, double threshold);

struct LpNormEstimate {
  Estimate estimate;
  // Set when the p-th absolute moment looks heavy tailed (empirical kurtosis
  // of |x-center|^p above 100); the estimate may converge slowly.
  bool heavy_tail_warning = false;
};

// (mean of |x - center|^p)^(1/p); the standard error is propagated from the
// p-th moment by the delta method.
LpNormEstimate empirical_lp_norm(std::span<const double> samples, double p,
                                 double center);

struct PowerLawFit {
  double exponent = 0.0;
  double intercept = 0.0;  // of log y against log x
  double r_squared = 0.0;
};

// Ordinary least squares on (log x, log y); requires >= 3 strictly positive
// points.
PowerLawFit powerlaw_fit(std::span<const double> xs, std::span<const double> ys);

// Plain linear least squares fit of y against x with its r^2.
PowerLawFit linear_fit(std::span<const double> xs, std::span<const double> ys);

// min(t, n^2); t itself when the vertex count is infinite (n <= 0).
double effective_time(double t, std::int64_t vertex_count);

}  // namespace edgeavg
