#include "chainlab/brownian.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace chainlab {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::domain_error(what);
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t tag) {
  std::uint64_t state = seed ^ (0x9e3779b97f4a7c15ULL * (tag + 1));
  std::uint64_t z = splitmix64(state);
  return splitmix64(state) ^ z;
}

double GaussianStream::next() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // 53-bit uniforms; u1 in (0, 1] keeps the log finite.
  const double u1 = 1.0 - static_cast<double>(rng_() >> 11) * 0x1.0p-53;
  const double u2 = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(angle);
  has_spare_ = true;
  return r * std::cos(angle);
}

BrownianDriver::BrownianDriver(std::uint64_t seed, int n_modes, int n_steps, double T,
                               std::vector<double> increments)
    : seed_(seed), n_modes_(n_modes), n_steps_(n_steps), T_(T),
      increments_(std::move(increments)) {
  require(n_modes_ >= 1, "BrownianDriver: n_modes must be >= 1");
  require(n_steps_ >= 1, "BrownianDriver: n_steps must be >= 1");
  require(T_ > 0.0, "BrownianDriver: horizon must be > 0");
  require(increments_.size() ==
              static_cast<std::size_t>(n_modes_) * static_cast<std::size_t>(n_steps_),
          "BrownianDriver: increment array size mismatch");
}

std::span<const double> BrownianDriver::increments(int k) const {
  require(k >= 1 && k <= n_modes_, "BrownianDriver: mode index out of range");
  return {increments_.data() + static_cast<std::size_t>(k - 1) * n_steps_,
          static_cast<std::size_t>(n_steps_)};
}

BrownianDriver make_driver(std::uint64_t seed, int n_modes, int n_steps, double T) {
  require(n_modes >= 1 && n_steps >= 1 && T > 0.0, "make_driver: nonpositive sizes");
  std::vector<double> inc(static_cast<std::size_t>(n_modes) * n_steps);
  const double sd = std::sqrt(T / n_steps);
  for (int k = 1; k <= n_modes; ++k) {
    GaussianStream g(mix_seed(seed, static_cast<std::uint64_t>(k)));
    double* row = inc.data() + static_cast<std::size_t>(k - 1) * n_steps;
    for (int j = 0; j < n_steps; ++j) row[j] = sd * g.next();
  }
  return BrownianDriver(seed, n_modes, n_steps, T, std::move(inc));
}

BrownianDriver coarsen_driver(const BrownianDriver& driver) {
  require(driver.n_steps() % 2 == 0, "coarsen_driver: n_steps must be even");
  const int n_coarse = driver.n_steps() / 2;
  std::vector<double> inc(static_cast<std::size_t>(driver.n_modes()) * n_coarse);
  for (int k = 1; k <= driver.n_modes(); ++k) {
    auto fine = driver.increments(k);
    double* row = inc.data() + static_cast<std::size_t>(k - 1) * n_coarse;
    for (int j = 0; j < n_coarse; ++j) row[j] = fine[2 * j] + fine[2 * j + 1];
  }
  return BrownianDriver(driver.seed(), driver.n_modes(), n_coarse, driver.horizon(),
                        std::move(inc));
}

std::vector<double> coupled_chain_noise(const BrownianDriver& driver,
                                        const SpectralBasis& basis) {
  const int d = basis.d();
  require(driver.n_modes() >= d - 1, "coupled_chain_noise: insufficient modes");
  const int m = driver.n_steps();
  std::vector<double> out(static_cast<std::size_t>(d - 1) * m, 0.0);
  const double scale = std::sqrt(2.0 / d);
  for (int k = 1; k <= d - 1; ++k) {
    auto src = driver.increments(k);
    for (int i = 1; i <= d - 1; ++i) {
      const double q = scale * eigenvector_component(d, i, k);
      double* dst = out.data() + static_cast<std::size_t>(i - 1) * m;
      for (int j = 0; j < m; ++j) dst[j] += q * src[j];
    }
  }
  return out;
}

}  // namespace chainlab
