#pragma once

#include <span>
#include <vector>

#include "chainlab/spectral.hpp"

namespace chainlab {

/// Parameters of the noiseless (sigma = 0) problem.
struct DeterministicParams {
  double epsilon = 1.0;  // pulling speed, >= 0
  int d = 16;            // intervals
  int K = 200;           // continuum series truncation
};

/// Cubic boundary-layer profile h(v) = v(v^2 - 1)/6 on [0, 1].
double h_continuum(double v);

/// Discrete samples h^i = (i/(6d))(i^2 - d^2); satisfies h^i = d^2 h(i/d).
double h_discrete(int d, int i);

/// Sine coefficient c_k = sqrt(2) * integral_0^1 h(v) sin(k pi v) dv,
/// closed form (-1)^k sqrt(2)/(k pi)^3.
double fourier_coeff(int k);

/// Certified uniform truncation bound for the continuum series:
/// eps * sum_{k>K} sqrt(2)|c_k| <= eps / (pi^3 K^2).
double d_truncation_bound(double epsilon, int K);

/// Discrete profile Delta(t, i/d) via the matrix-exponential form:
/// (i/d)(eps t + 1) + eps (h^i/d^2 - [e^{d^2 t A} h/d^2]^i), the exponential
/// applied through the spectral transform of the full h vector.
double delta_discrete_matrix(const DeterministicParams& p, const SpectralBasis& basis,
                             double t, int i);

/// Same profile via the explicit spectral sum
/// (i/d)(eps t + 1) + eps (h^i/d^2 - (2/d^3) sum_k hhat_k e^{d^2 t lambda_k} f_k^i)
/// with hhat_k = sum_m h^m f_k^m.
double delta_discrete_spectral(const DeterministicParams& p, const SpectralBasis& basis,
                               double t, int i);

/// Whole row Delta(t, i/d), i = 0..d, one transform per call.
std::vector<double> delta_row(const DeterministicParams& p, const SpectralBasis& basis,
                              double t);

/// Continuum profile D(t, v) = v(eps t + 1) + eps (h(v) - sum_{k<=K} c_k
/// e^{-k^2 pi^2 t} sqrt(2) sin(k pi v)).
double d_continuum(double epsilon, double t, double v, int K);

/// Row D(t, i/d), i = 0..d, through the exact sine-aliasing fold (one DST per
/// call, any K).  Agrees with d_continuum pointwise to rounding.
std::vector<double> d_continuum_row(double epsilon, double t, int d, int K);

}  // namespace chainlab
