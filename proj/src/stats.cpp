// SPDX-License-Identifier: Apache-2.0
#include "mamimo/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mamimo {

namespace {
constexpr double kZ95 = 1.959963984540054;  // 97.5% standard-normal quantile

std::int64_t quantile_rank(std::size_t n, double alpha) {
  if (n < 2) {
    throw std::invalid_argument("quantile threshold: need at least 2 samples");
  }
  if (!(alpha > 0.0) || !(alpha < 1.0)) {
    throw std::invalid_argument("quantile threshold: alpha must be in (0, 1)");
  }
  const auto k = static_cast<std::int64_t>(std::llround(alpha * static_cast<double>(n)));
  if (k < 1 || k > static_cast<std::int64_t>(n) - 1) {
    throw std::invalid_argument("quantile threshold: too few samples for alpha");
  }
  return k;
}
}  // namespace

CurvePoint wilson_interval(std::int64_t successes, std::int64_t trials) {
  if (trials < 1 || successes < 0 || successes > trials) {
    throw std::invalid_argument("wilson_interval: bad counts");
  }
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = kZ95 * kZ95;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half =
      kZ95 * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  CurvePoint out;
  out.estimate = p;
  out.ci_low = std::max(0.0, center - half);
  out.ci_high = std::min(1.0, center + half);
  return out;
}

CurvePoint mean_interval(double sum, double sum_sq, std::int64_t n) {
  if (n < 1) {
    throw std::invalid_argument("mean_interval: need at least one sample");
  }
  const double nn = static_cast<double>(n);
  const double mean = sum / nn;
  double var = 0.0;
  if (n > 1) {
    var = std::max(0.0, (sum_sq - nn * mean * mean) / (nn - 1.0));
  }
  const double half = kZ95 * std::sqrt(var / nn);
  CurvePoint out;
  out.estimate = mean;
  out.ci_low = mean - half;
  out.ci_high = mean + half;
  return out;
}

double lower_tail_threshold(std::vector<double>& samples, double alpha) {
  const auto k = quantile_rank(samples.size(), alpha);
  std::sort(samples.begin(), samples.end());
  return 0.5 * (samples[static_cast<std::size_t>(k - 1)] +
                samples[static_cast<std::size_t>(k)]);
}

double upper_tail_threshold(std::vector<double>& samples, double alpha) {
  const auto k = quantile_rank(samples.size(), alpha);
  std::sort(samples.begin(), samples.end());
  const auto n = static_cast<std::int64_t>(samples.size());
  return 0.5 * (samples[static_cast<std::size_t>(n - 1 - k)] +
                samples[static_cast<std::size_t>(n - k)]);
}

}  // namespace mamimo
