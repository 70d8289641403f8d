#include "chainlab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace chainlab {

double mean(std::span<const double> xs) {
  if (xs.empty()) throw std::domain_error("mean: empty sample");
  double acc = 0.0;
  for (double x : xs) acc += x;
  return acc / static_cast<double>(xs.size());
}

double sample_variance(std::span<const double> xs) {
  if (xs.size() < 2) throw std::domain_error("sample_variance: need n >= 2");
  const double m = mean(xs);
  double acc = 0.0;
  for (double x : xs) acc += (x - m) * (x - m);
  return acc / static_cast<double>(xs.size() - 1);
}

double std_error_mean(std::span<const double> xs) {
  return std::sqrt(sample_variance(xs) / static_cast<double>(xs.size()));
}

double std_error_variance(double variance, std::size_t n) {
  if (n < 2) throw std::domain_error("std_error_variance: need n >= 2");
  return variance * std::sqrt(2.0 / static_cast<double>(n - 1));
}

double kurtosis(std::span<const double> xs) {
  if (xs.size() < 4) throw std::domain_error("kurtosis: need n >= 4");
  const double m = mean(xs);
  double m2 = 0.0, m4 = 0.0;
  for (double x : xs) {
    const double c = x - m;
    m2 += c * c;
    m4 += c * c * c * c;
  }
  m2 /= static_cast<double>(xs.size());
  m4 /= static_cast<double>(xs.size());
  if (m2 == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return m4 / (m2 * m2);
}

double quantile(std::span<const double> xs, double q) {
  if (xs.empty()) throw std::domain_error("quantile: empty sample");
  if (q < 0.0 || q > 1.0) throw std::domain_error("quantile: q outside [0, 1]");
  std::vector<double> s(xs.begin(), xs.end());
  std::sort(s.begin(), s.end());
  const double pos = q * static_cast<double>(s.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(pos);
  if (lo + 1 >= s.size()) return s.back();
  const double frac = pos - static_cast<double>(lo);
  return s[lo] * (1.0 - frac) + s[lo + 1] * frac;
}

LineFit fit_line(std::span<const double> xs, std::span<const double> ys) {
  const std::size_t n = xs.size();
  if (n != ys.size() || n < 2) throw std::domain_error("fit_line: bad sample");
  const double mx = mean(xs);
  const double my = mean(ys);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx == 0.0) throw std::domain_error("fit_line: degenerate x sample");
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  if (n >= 3) {
    double rss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = ys[i] - fit.intercept - fit.slope * xs[i];
      rss += r * r;
    }
    fit.slope_std_error = std::sqrt(rss / static_cast<double>(n - 2) / sxx);
  }
  return fit;
}

}  // namespace chainlab
