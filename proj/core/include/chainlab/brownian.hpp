#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "chainlab/spectral.hpp"

namespace chainlab {

/// splitmix64 step; also the seed-mixing primitive for named substreams.
std::uint64_t splitmix64(std::uint64_t& state);

/// Stateless mix of (seed, tag) into an independent substream seed.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t tag);

/// Deterministic standard-normal stream: mt19937_64 + Box-Muller.
/// std::normal_distribution is implementation-defined, so it is not used.
class GaussianStream {
 public:
  explicit GaussianStream(std::uint64_t seed) : rng_(seed) {}

  double next();

 private:
  std::mt19937_64 rng_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Master Brownian family on the fine grid: K_max independent paths, M
/// increments each on [0, T], increment ~ N(0, T/M).  Mode k draws from a
/// substream keyed by (seed, k), so enlarging K_max never perturbs the
/// first modes.  Row-major storage: increments(k) is contiguous.
class BrownianDriver {
 public:
  BrownianDriver(std::uint64_t seed, int n_modes, int n_steps, double T,
                 std::vector<double> increments);

  std::uint64_t seed() const noexcept { return seed_; }
  int n_modes() const noexcept { return n_modes_; }
  int n_steps() const noexcept { return n_steps_; }
  double horizon() const noexcept { return T_; }
  double dt() const noexcept { return T_ / n_steps_; }

  std::span<const double> increments(int k) const;  // k = 1..n_modes

 private:
  std::uint64_t seed_;
  int n_modes_;
  int n_steps_;
  double T_;
  std::vector<double> increments_;  // [mode][step]
};

BrownianDriver make_driver(std::uint64_t seed, int n_modes, int n_steps, double T);

/// Pairwise-summed copy with n_steps/2 increments: the same Brownian paths on
/// a grid twice as coarse.  Used for step-size refinement studies that must
/// hold the noise realization fixed.
BrownianDriver coarsen_driver(const BrownianDriver& driver);

/// Rotated chain increments dB^{i,d} = sum_k Q_{i,k} dB^k, i = 1..d-1.
/// Returns row-major [i-1][step]; rows are again independent Brownian
/// increments since Q is orthonormal.
std::vector<double> coupled_chain_noise(const BrownianDriver& driver,
                                        const SpectralBasis& basis);

}  // namespace chainlab
