#include "chainlab/spectral.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>

#ifdef CHAINLAB_HAVE_FFTW
#include <fftw3.h>
#endif

namespace chainlab {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::domain_error(what);
}

}  // namespace

double eigenvalue(int d, int k) {
  require(d >= 2, "eigenvalue: d must be >= 2, got " + std::to_string(d));
  require(k >= 1 && k <= d - 1,
          "eigenvalue: k must be in [1, d-1], got k=" + std::to_string(k) +
              " for d=" + std::to_string(d));
  return -2.0 * (1.0 - std::cos(k * std::numbers::pi / d));
}

double eigenvector_component(int d, int k, int m) {
  require(d >= 2, "eigenvector_component: d must be >= 2");
  require(k >= 1 && k <= d - 1, "eigenvector_component: k out of range");
  require(m >= 1 && m <= d - 1, "eigenvector_component: m out of range");
  return std::sin(static_cast<double>(k) * m * std::numbers::pi / d);
}

std::vector<double> apply_laplacian(std::span<const double> x) {
  const std::size_t n = x.size();
  require(n >= 1, "apply_laplacian: empty vector");
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double left = i > 0 ? x[i - 1] : 0.0;
    const double right = i + 1 < n ? x[i + 1] : 0.0;
    y[i] = left - 2.0 * x[i] + right;
  }
  return y;
}

void dst_direct(std::span<const double> x, std::span<double> y) {
  const std::size_t n = x.size();
  require(y.size() == n, "dst_direct: size mismatch");
  const double step = std::numbers::pi / static_cast<double>(n + 1);
  for (std::size_t k = 1; k <= n; ++k) {
    double acc = 0.0;
    for (std::size_t j = 1; j <= n; ++j)
      acc += x[j - 1] * std::sin(step * static_cast<double>(j * k));
    y[k - 1] = acc;
  }
}

#ifdef CHAINLAB_HAVE_FFTW

namespace {

// RODFT00 computes 2x the unnormalized DST-I.  Plans are cached per size;
// creation is serialized (FFTW planner is not thread-safe), execution via the
// new-array interface is.
fftw_plan plan_for(int n) {
  static std::mutex mu;
  static std::map<int, fftw_plan> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<double> in(n), out(n);
  fftw_plan p = fftw_plan_r2r_1d(n, in.data(), out.data(), FFTW_RODFT00,
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
  cache.emplace(n, p);
  return p;
}

}  // namespace

void dst_fast(std::span<const double> x, std::span<double> y) {
  const std::size_t n = x.size();
  require(y.size() == n, "dst_fast: size mismatch");
  fftw_plan p = plan_for(static_cast<int>(n));
  std::vector<double> in(x.begin(), x.end());
  fftw_execute_r2r(p, in.data(), y.data());
  for (std::size_t k = 0; k < n; ++k) y[k] *= 0.5;
}

bool dst_fast_available() noexcept { return true; }

#else

void dst_fast(std::span<const double> x, std::span<double> y) {
  dst_direct(x, y);
}

bool dst_fast_available() noexcept { return false; }

#endif

std::vector<double> fold_modes_to_dst(std::span<const double> w, int n) {
  require(n >= 1, "fold_modes_to_dst: n must be >= 1");
  std::vector<double> c(n, 0.0);
  const int period = 2 * (n + 1);
  for (std::size_t idx = 0; idx < w.size(); ++idx) {
    const int k = static_cast<int>(idx) + 1;
    const int kp = k % period;
    if (kp == 0 || kp == n + 1) continue;
    if (kp <= n)
      c[kp - 1] += w[idx];
    else
      c[period - kp - 1] -= w[idx];
  }
  return c;
}

SpectralBasis::SpectralBasis(int d) : d_(d) {
  require(d >= 2, "SpectralBasis: d must be >= 2, got " + std::to_string(d));
  lambdas_.resize(d - 1);
  for (int k = 1; k <= d - 1; ++k) lambdas_[k - 1] = eigenvalue(d, k);
}

double SpectralBasis::lambda(int k) const {
  require(k >= 1 && k <= d_ - 1, "SpectralBasis::lambda: k out of range");
  return lambdas_[k - 1];
}

void SpectralBasis::apply(std::span<const double> in, std::span<double> out) const {
  require(in.size() == static_cast<std::size_t>(d_ - 1) && out.size() == in.size(),
          "SpectralBasis::apply: expected vectors of length d-1");
  dst_fast(in, out);
  const double scale = std::sqrt(2.0 / d_);
  for (auto& v : out) v *= scale;
}

std::vector<double> SpectralBasis::transform_forward(std::span<const double> x) const {
  std::vector<double> c(x.size());
  apply(x, c);
  return c;
}

std::vector<double> SpectralBasis::transform_inverse(std::span<const double> c) const {
  std::vector<double> x(c.size());
  apply(c, x);
  return x;
}

}  // namespace chainlab
