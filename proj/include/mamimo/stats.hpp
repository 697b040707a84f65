// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

namespace mamimo {

// One point of an experiment sweep. x is the sweep coordinate (antenna count
// or SNR in dB), estimate the Monte-Carlo estimate, [ci_low, ci_high] its 95%
// confidence interval.
struct CurvePoint {
  double x = 0.0;
  double estimate = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
};

// 95% Wilson score interval for a binomial proportion.
CurvePoint wilson_interval(std::int64_t successes, std::int64_t trials);

// Normal-approximation 95% interval for a sample mean, from running sums.
CurvePoint mean_interval(double sum, double sum_sq, std::int64_t n);

// Threshold placed so that about alpha * samples.size() samples fall strictly
// below (above) it; the midpoint of the two bracketing order statistics.
// `samples` is sorted in place. Requires 1 <= round(alpha * n) <= n - 1.
double lower_tail_threshold(std::vector<double>& samples, double alpha);
double upper_tail_threshold(std::vector<double>& samples, double alpha);

}  // namespace mamimo
