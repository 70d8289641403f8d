#include "chainlab/deterministic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace chainlab {

namespace {

constexpr double kPi = std::numbers::pi;

void require(bool ok, const std::string& what) {
  if (!ok) throw std::domain_error(what);
}

std::vector<double> h_vector(int d) {
  std::vector<double> h(d - 1);
  for (int i = 1; i <= d - 1; ++i) h[i - 1] = h_discrete(d, i);
  return h;
}

void check_point(const DeterministicParams& p, double t, int i) {
  require(p.epsilon >= 0.0, "delta: epsilon must be >= 0");
  require(t >= 0.0, "delta: t must be >= 0");
  require(i >= 0 && i <= p.d, "delta: i must be in [0, d]");
}

}  // namespace

double h_continuum(double v) {
  require(v >= 0.0 && v <= 1.0, "h_continuum: v must be in [0, 1]");
  return v * (v * v - 1.0) / 6.0;
}

double h_discrete(int d, int i) {
  require(d >= 2, "h_discrete: d must be >= 2");
  require(i >= 1 && i <= d - 1, "h_discrete: i must be in [1, d-1]");
  const double di = i;
  return di / (6.0 * d) * (di * di - static_cast<double>(d) * d);
}

double fourier_coeff(int k) {
  require(k >= 1, "fourier_coeff: k must be >= 1");
  const double sign = k % 2 == 0 ? 1.0 : -1.0;
  const double kpi = k * kPi;
  return sign * std::numbers::sqrt2 / (kpi * kpi * kpi);
}

double d_truncation_bound(double epsilon, int K) {
  require(epsilon >= 0.0 && K >= 1, "d_truncation_bound: bad arguments");
  return epsilon / (kPi * kPi * kPi * static_cast<double>(K) * K);
}

double delta_discrete_matrix(const DeterministicParams& p, const SpectralBasis& basis,
                             double t, int i) {
  require(basis.d() == p.d, "delta: basis dimension mismatch");
  check_point(p, t, i);
  const int d = p.d;
  if (i == 0) return 0.0;
  if (i == d) return 1.0 + p.epsilon * t;

  std::vector<double> g = h_vector(d);
  const double inv_d2 = 1.0 / (static_cast<double>(d) * d);
  for (auto& v : g) v *= inv_d2;

  std::vector<double> c = basis.transform_forward(g);
  const double d2t = static_cast<double>(d) * d * t;
  for (int k = 1; k <= d - 1; ++k) c[k - 1] *= std::exp(d2t * basis.lambda(k));
  std::vector<double> propagated = basis.transform_inverse(c);

  const double v = static_cast<double>(i) / d;
  return v * (p.epsilon * t + 1.0) +
         p.epsilon * (h_discrete(d, i) * inv_d2 - propagated[i - 1]);
}

double delta_discrete_spectral(const DeterministicParams& p, const SpectralBasis& basis,
                               double t, int i) {
  require(basis.d() == p.d, "delta: basis dimension mismatch");
  check_point(p, t, i);
  const int d = p.d;
  if (i == 0) return 0.0;
  if (i == d) return 1.0 + p.epsilon * t;

  const double d2t = static_cast<double>(d) * d * t;
  double sum = 0.0;
  for (int k = 1; k <= d - 1; ++k) {
    double hhat = 0.0;
    for (int m = 1; m <= d - 1; ++m)
      hhat += h_discrete(d, m) * eigenvector_component(d, k, m);
    sum += hhat * std::exp(d2t * basis.lambda(k)) * eigenvector_component(d, k, i);
  }
  const double bracket = 2.0 / (static_cast<double>(d) * d * d) * sum;

  const double v = static_cast<double>(i) / d;
  const double inv_d2 = 1.0 / (static_cast<double>(d) * d);
  return v * (p.epsilon * t + 1.0) +
         p.epsilon * (h_discrete(d, i) * inv_d2 - bracket);
}

std::vector<double> delta_row(const DeterministicParams& p, const SpectralBasis& basis,
                              double t) {
  require(basis.d() == p.d, "delta_row: basis dimension mismatch");
  require(t >= 0.0, "delta_row: t must be >= 0");
  require(p.epsilon >= 0.0, "delta_row: epsilon must be >= 0");
  const int d = p.d;

  std::vector<double> g = h_vector(d);
  const double inv_d2 = 1.0 / (static_cast<double>(d) * d);
  for (auto& v : g) v *= inv_d2;

  std::vector<double> c = basis.transform_forward(g);
  const double d2t = static_cast<double>(d) * d * t;
  for (int k = 1; k <= d - 1; ++k) c[k - 1] *= std::exp(d2t * basis.lambda(k));
  std::vector<double> propagated = basis.transform_inverse(c);

  std::vector<double> row(d + 1);
  row[0] = 0.0;
  row[d] = 1.0 + p.epsilon * t;
  for (int i = 1; i <= d - 1; ++i) {
    const double v = static_cast<double>(i) / d;
    row[i] = v * (p.epsilon * t + 1.0) +
             p.epsilon * (h_discrete(d, i) * inv_d2 - propagated[i - 1]);
  }
  return row;
}

std::vector<double> d_continuum_row(double epsilon, double t, int d, int K) {
  require(epsilon >= 0.0 && t >= 0.0, "d_continuum_row: bad arguments");
  require(d >= 2 && K >= 1, "d_continuum_row: bad arguments");
  std::vector<double> coeff(K);
  for (int k = 1; k <= K; ++k) {
    const double theta = kPi * kPi * static_cast<double>(k) * k;
    coeff[k - 1] = fourier_coeff(k) * std::exp(-theta * t);
  }
  std::vector<double> folded = fold_modes_to_dst(coeff, d - 1);
  std::vector<double> series(d - 1);
  dst_fast(folded, series);

  std::vector<double> row(d + 1);
  row[0] = 0.0;
  row[d] = 1.0 + epsilon * t;
  for (int i = 1; i <= d - 1; ++i) {
    const double v = static_cast<double>(i) / d;
    row[i] = v * (epsilon * t + 1.0) +
             epsilon * (h_continuum(v) - std::numbers::sqrt2 * series[i - 1]);
  }
  return row;
}

double d_continuum(double epsilon, double t, double v, int K) {
  require(epsilon >= 0.0, "d_continuum: epsilon must be >= 0");
  require(t >= 0.0, "d_continuum: t must be >= 0");
  require(v >= 0.0 && v <= 1.0, "d_continuum: v must be in [0, 1]");
  require(K >= 1, "d_continuum: K must be >= 1");
  if (v == 0.0) return 0.0;
  if (v == 1.0) return 1.0 + epsilon * t;

  double series = 0.0;
  for (int k = 1; k <= K; ++k) {
    const double theta = kPi * kPi * static_cast<double>(k) * k;
    series += fourier_coeff(k) * std::exp(-theta * t) *
              std::numbers::sqrt2 * std::sin(k * kPi * v);
  }
  return v * (epsilon * t + 1.0) + epsilon * (h_continuum(v) - series);
}

}  // namespace chainlab
