#pragma once

#include <span>
#include <vector>

namespace chainlab {

double mean(std::span<const double> xs);

/// Unbiased sample variance (n-1 denominator); needs n >= 2.
double sample_variance(std::span<const double> xs);

/// Standard error of the sample mean.
double std_error_mean(std::span<const double> xs);

/// Approximate standard error of the sample variance under near-Gaussian
/// samples: var * sqrt(2/(n-1)).
double std_error_variance(double variance, std::size_t n);

/// Raw kurtosis m4/m2^2 (Gaussian value 3).
double kurtosis(std::span<const double> xs);

/// q-quantile with linear interpolation; copies and sorts.
double quantile(std::span<const double> xs, double q);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_std_error = 0.0;
};

/// Ordinary least squares y = intercept + slope * x; needs >= 3 points for a
/// finite slope standard error.
LineFit fit_line(std::span<const double> xs, std::span<const double> ys);

}  // namespace chainlab
