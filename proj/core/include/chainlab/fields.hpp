#pragma once

#include <span>
#include <vector>

#include "chainlab/brownian.hpp"
#include "chainlab/grid.hpp"
#include "chainlab/ou.hpp"
#include "chainlab/spectral.hpp"

namespace chainlab {

/// Field values on the (d+1) x (d+1) node lattice of a FieldGrid, row-major
/// by time.  Zero at v = 0, v = 1 and t = 0 by construction.
struct RandomField {
  enum class Kind { sigma_d, s_truncated, chain_euler };

  FieldGrid grid;
  Kind kind;
  std::vector<double> values;  // [t-node][v-node]

  double at(int j, int i) const {
    return values[static_cast<std::size_t>(j) * (grid.d + 1) + i];
  }

  /// Step-field evaluation Sigma_d(t, v) = value(t-floor, v-floor).
  double step_eval(double t, double v) const;
};

/// Discrete stochastic field Sigma(t_j, i/d) = sigma * sum_k w_{k,d}(t_j)
/// sqrt(2) sin(k pi i/d), with w_{k,d} evolved at rates -d^2 lambda_k on the
/// driver's fine grid (left-endpoint scheme, shared increments).
RandomField sigma_d_field(const BrownianDriver& driver, const SpectralBasis& basis,
                          double sigma, const FieldGrid& grid);

/// Truncated continuum field S(t_j, v_i) = sigma * sum_{k<=K} w_k(t_j)
/// sqrt(2) sin(k pi v_i), rates pi^2 k^2, same driver.
RandomField s_field(const BrownianDriver& driver, int K, double sigma,
                    const FieldGrid& grid);

/// Certified variance tail of the S truncation: sigma^2 / (pi^2 K).
double s_truncation_variance_tail(double sigma, int K);

/// Row of the discrete field at each recorded fine step: out[r][0..d] with
/// boundary zeros.  record_steps as in evolve_ou.
std::vector<std::vector<double>> sigma_d_rows(const BrownianDriver& driver,
                                              const SpectralBasis& basis, double sigma,
                                              std::span<const int> record_steps);

/// Rows of the truncated continuum field evaluated on the lattice
/// v = m/(n_cells), m = 0..n_cells, at each recorded fine step.  Uses the
/// exact sine-aliasing fold, so any K is supported at DST cost.
std::vector<std::vector<double>> s_rows(const BrownianDriver& driver, int K,
                                        double sigma, std::span<const int> record_steps,
                                        int n_cells);

/// Pointwise S(t, v) from mode values at one time; direct O(K) sum.
double s_point(std::span<const double> w, double sigma, double v);

}  // namespace chainlab
