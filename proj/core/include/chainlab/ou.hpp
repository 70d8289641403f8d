#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "chainlab/brownian.hpp"

namespace chainlab {

/// Var[w(t)] for w(t) = int_0^t e^{-a(t-u)} dB_u: (1 - e^{-2at})/(2a).
double ou_exact_variance(double a, double t);

/// Cov[w_a(t), w_b(t)] for two such integrals driven by the SAME Brownian
/// motion: (1 - e^{-(a+b)t})/(a+b).
double ou_exact_covariance(double a, double b, double t);

/// Exact variance of the left-endpoint scheme w <- e^{-a delta}(w + dB) after
/// n steps of size delta: delta e^{-2a delta} (1 - e^{-2a delta n}) /
/// (1 - e^{-2a delta}).  This is what the scheme converges to in law, used to
/// separate discretization bias from Monte Carlo noise.
double ou_scheme_variance(double a, double delta, int n);

/// Left-endpoint Ito evolution of one mode on the driver's fine grid,
/// recorded at the requested step indices (0 = time 0).  Indices must be
/// sorted, within [0, n_steps].
std::vector<double> evolve_ou(const BrownianDriver& driver, int mode, double a,
                              std::span<const int> record_steps);

/// All-mode paths: values[k-1][r] = w_k(t of record_steps[r]) with per-mode
/// rates.  rates[k-1] is the rate of driver mode k; rates.size() modes evolve.
struct ModePaths {
  std::vector<double> rates;
  int n_records = 0;
  std::vector<double> values;  // [mode][record]

  double at(int k, int r) const {
    return values[static_cast<std::size_t>(k - 1) * n_records + r];
  }
};

ModePaths evolve_ou_family(const BrownianDriver& driver, std::span<const double> rates,
                           std::span<const int> record_steps);

/// Exact joint sampler for m OU coordinates w_i(t) = int_0^t e^{-a_i(t-u)} dB_u
/// sharing one Brownian motion.  Transitions over a step tau are Gaussian:
/// w' = diag(e^{-a_i tau}) w + L z with L L^T_{ij} = (1-e^{-(a_i+a_j)tau})/(a_i+a_j).
/// Measurement-grade: no time-discretization bias.  Used by the variance
/// suite; production fields use evolve_ou on the shared fine grid.
class JointOuSampler {
 public:
  JointOuSampler(std::span<const double> rates, double tau);

  int dim() const noexcept { return static_cast<int>(rates_.size()); }
  double tau() const noexcept { return tau_; }

  /// Advances state by tau in place using dim() standard normals from g.
  void step(std::span<double> state, GaussianStream& g) const;

 private:
  std::vector<double> rates_;
  double tau_;
  std::vector<double> decay_;
  std::vector<double> chol_;  // lower triangular, row-major dim x dim
};

/// Lower-triangular Cholesky factor of a symmetric positive-definite matrix
/// (row-major n x n).  Throws std::domain_error if not positive definite.
std::vector<double> cholesky_lower(std::span<const double> matrix, int n);

}  // namespace chainlab
