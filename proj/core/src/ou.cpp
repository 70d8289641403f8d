#include "chainlab/ou.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace chainlab {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::domain_error(what);
}

}  // namespace

double ou_exact_variance(double a, double t) {
  require(a > 0.0, "ou_exact_variance: rate must be > 0");
  require(t >= 0.0, "ou_exact_variance: t must be >= 0");
  return -std::expm1(-2.0 * a * t) / (2.0 * a);
}

double ou_exact_covariance(double a, double b, double t) {
  require(a > 0.0 && b > 0.0, "ou_exact_covariance: rates must be > 0");
  require(t >= 0.0, "ou_exact_covariance: t must be >= 0");
  return -std::expm1(-(a + b) * t) / (a + b);
}

double ou_scheme_variance(double a, double delta, int n) {
  require(a > 0.0 && delta > 0.0, "ou_scheme_variance: bad arguments");
  require(n >= 0, "ou_scheme_variance: n must be >= 0");
  if (n == 0) return 0.0;
  const double q = std::exp(-2.0 * a * delta);
  return delta * q * -std::expm1(-2.0 * a * delta * n) / -std::expm1(-2.0 * a * delta);
}

std::vector<double> evolve_ou(const BrownianDriver& driver, int mode, double a,
                              std::span<const int> record_steps) {
  require(a >= 0.0, "evolve_ou: rate must be >= 0");
  const int m = driver.n_steps();
  for (std::size_t r = 0; r + 1 < record_steps.size(); ++r)
    require(record_steps[r] < record_steps[r + 1], "evolve_ou: record steps not sorted");
  if (!record_steps.empty())
    require(record_steps.front() >= 0 && record_steps.back() <= m,
            "evolve_ou: record step outside fine grid");

  auto inc = driver.increments(mode);
  const double decay = std::exp(-a * driver.dt());
  std::vector<double> out(record_steps.size());
  std::size_t r = 0;
  double w = 0.0;
  if (r < record_steps.size() && record_steps[r] == 0) out[r++] = 0.0;
  for (int j = 1; j <= m && r < record_steps.size(); ++j) {
    w = decay * (w + inc[j - 1]);
    if (record_steps[r] == j) out[r++] = w;
  }
  return out;
}

ModePaths evolve_ou_family(const BrownianDriver& driver, std::span<const double> rates,
                           std::span<const int> record_steps) {
  require(static_cast<int>(rates.size()) <= driver.n_modes(),
          "evolve_ou_family: insufficient modes");
  ModePaths paths;
  paths.rates.assign(rates.begin(), rates.end());
  paths.n_records = static_cast<int>(record_steps.size());
  paths.values.resize(rates.size() * record_steps.size());
  for (std::size_t k = 1; k <= rates.size(); ++k) {
    std::vector<double> w = evolve_ou(driver, static_cast<int>(k), rates[k - 1],
                                      record_steps);
    std::copy(w.begin(), w.end(),
              paths.values.begin() + (k - 1) * record_steps.size());
  }
  return paths;
}

std::vector<double> cholesky_lower(std::span<const double> matrix, int n) {
  require(matrix.size() == static_cast<std::size_t>(n) * n, "cholesky: size mismatch");
  std::vector<double> L(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      double s = matrix[static_cast<std::size_t>(i) * n + j];
      for (int p = 0; p < j; ++p)
        s -= L[static_cast<std::size_t>(i) * n + p] * L[static_cast<std::size_t>(j) * n + p];
      if (i == j) {
        require(s > 0.0, "cholesky: matrix not positive definite");
        L[static_cast<std::size_t>(i) * n + j] = std::sqrt(s);
      } else {
        L[static_cast<std::size_t>(i) * n + j] =
            s / L[static_cast<std::size_t>(j) * n + j];
      }
    }
  }
  return L;
}

JointOuSampler::JointOuSampler(std::span<const double> rates, double tau)
    : rates_(rates.begin(), rates.end()), tau_(tau) {
  require(!rates_.empty(), "JointOuSampler: empty rate list");
  require(tau > 0.0, "JointOuSampler: tau must be > 0");
  const int n = dim();
  decay_.resize(n);
  std::vector<double> cov(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    require(rates_[i] > 0.0, "JointOuSampler: rates must be > 0");
    decay_[i] = std::exp(-rates_[i] * tau);
    for (int j = 0; j <= i; ++j) {
      const double c = ou_exact_covariance(rates_[i], rates_[j], tau);
      cov[static_cast<std::size_t>(i) * n + j] = c;
      cov[static_cast<std::size_t>(j) * n + i] = c;
    }
  }
  chol_ = cholesky_lower(cov, n);
}

void JointOuSampler::step(std::span<double> state, GaussianStream& g) const {
  const int n = dim();
  require(state.size() == static_cast<std::size_t>(n), "JointOuSampler: state size");
  require(n <= 64, "JointOuSampler: dimension too large");
  double z[64];
  for (int i = 0; i < n; ++i) z[i] = g.next();
  for (int i = 0; i < n; ++i) {
    double noise = 0.0;
    for (int j = 0; j <= i; ++j)
      noise += chol_[static_cast<std::size_t>(i) * n + j] * z[j];
    state[i] = decay_[i] * state[i] + noise;
  }
}

}  // namespace chainlab
