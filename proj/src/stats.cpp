#include "edgeavg/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace edgeavg {

namespace {

void require_samples(std::span<const double> samples) {
  if (samples.size() < 2) {
    throw std::invalid_argument("estimation requires at least 2 samples");
  }
  for (double x : samples) {
    if (!std::isfinite(x)) {
      throw std::invalid_argument("estimation requires finite samples");
    }
  }
}

double sample_mean(std::span<const double> samples) {
  double sum = 0.0;
  for (double x : samples) sum += x;
  return sum / static_cast<double>(samples.size());
}

}  // namespace

Estimate mean_ci(std::span<const double> samples) {
  require_samples(samples);
  const double n = static_cast<double>(samples.size());
  const double mean = sample_mean(samples);
  double ss = 0.0;
  for (double x : samples) ss += (x - mean) * (x - mean);
  const double sd = std::sqrt(ss / (n - 1.0));
  return {mean, sd / std::sqrt(n), static_cast<std::int64_t>(samples.size())};
}

Estimate variance_ci(std::span<const double> samples) {
  require_samples(samples);
  const double n = static_cast<double>(samples.size());
  const double mean = sample_mean(samples);
  double m2 = 0.0;
  double m4 = 0.0;
  for (double x : samples) {
    const double d = x - mean;
    m2 += d * d;
    m4 += d * d * d * d;
  }
  m2 /= n;
  m4 /= n;
  const double var = m2 * n / (n - 1.0);
  const double se = std::sqrt(std::max(0.0, m4 - m2 * m2) / n);
  return {var, se, static_cast<std::int64_t>(samples.size())};
}

Estimate tail_prob(std::span<const double> samples, double threshold) {
  require_samples(samples);
  const double n = static_cast<double>(samples.size());
  double hits = 0.0;
  for (double x : samples) {
    if (std::abs(x) >= threshold) hits += 1.0;
  }
  const double p = hits / n;
  return {p, std::sqrt(p * (1.0 - p) / n), static_cast<std::int64_t>(samples.size())};
}

LpNormEstimate empirical_lp_norm(std::span<const double> samples, double p,
                                 double center) {
  require_samples(samples);
  if (!(p >= 1.0)) throw std::invalid_argument("p must be >= 1");
  const double n = static_cast<double>(samples.size());
  double sum = 0.0;
  for (double x : samples) sum += std::pow(std::abs(x - center), p);
  const double moment = sum / n;

  double m2 = 0.0;
  double m4 = 0.0;
  for (double x : samples) {
    const double d = std::pow(std::abs(x - center), p) - moment;
    m2 += d * d;
    m4 += d * d * d * d;
  }
  m2 /= n;
  m4 /= n;
  const double moment_se = std::sqrt(m2 / n);

  LpNormEstimate out;
  out.estimate.sample_count = static_cast<std::int64_t>(samples.size());
  out.estimate.point = std::pow(moment, 1.0 / p);
  // d/dm m^(1/p) = m^(1/p - 1) / p
  out.estimate.standard_error =
      moment > 0.0 ? moment_se * std::pow(moment, 1.0 / p - 1.0) / p : 0.0;
  if (m2 > 0.0 && m4 / (m2 * m2) > 100.0) out.heavy_tail_warning = true;
  return out;
}

PowerLawFit linear_fit(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.size() < 3) {
    throw std::invalid_argument("fit requires >= 3 (x, y) pairs");
  }
  const double n = static_cast<double>(xs.size());
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
  }
  const double mx = sx / n;
  const double my = sy / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) throw std::invalid_argument("fit requires non-degenerate x values");
  PowerLawFit fit;
  fit.exponent = sxy / sxx;
  fit.intercept = my - fit.exponent * mx;
  if (syy == 0.0) {
    fit.r_squared = 1.0;  // constant y is fit exactly by slope 0
  } else {
    double ss_res = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double r = ys[i] - (fit.intercept + fit.exponent * xs[i]);
      ss_res += r * r;
    }
    fit.r_squared = 1.0 - ss_res / syy;
  }
  return fit;
}

PowerLawFit powerlaw_fit(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.size() < 3) {
    throw std::invalid_argument("powerlaw_fit requires >= 3 points");
  }
  std::vector<double> lx(xs.size());
  std::vector<double> ly(ys.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!(xs[i] > 0.0) || !(ys[i] > 0.0)) {
      throw std::invalid_argument("powerlaw_fit requires strictly positive values");
    }
    lx[i] = std::log(xs[i]);
    ly[i] = std::log(ys[i]);
  }
  return linear_fit(lx, ly);
}

double effective_time(double t, std::int64_t vertex_count) {
  if (t < 0.0) throw std::invalid_argument("effective_time requires t >= 0");
  if (vertex_count <= 0) return t;
  const double n = static_cast<double>(vertex_count);
  return std::min(t, n * n);
}

}  // namespace edgeavg
