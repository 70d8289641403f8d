#pragma once

#include <span>
#include <vector>

namespace chainlab {

/// Eigenvalue of the (d-1)x(d-1) discrete Dirichlet Laplacian A:
/// lambda_k = -2(1 - cos(k*pi/d)), k = 1..d-1.  Strictly decreasing in k,
/// contained in (-4, 0).
double eigenvalue(int d, int k);

/// Eigenvector component f_k^m = sin(k*m*pi/d), k,m = 1..d-1.
double eigenvector_component(int d, int k, int m);

/// y_i = x_{i+1} - 2 x_i + x_{i-1} with x_0 = x_d = 0 convention; O(d).
std::vector<double> apply_laplacian(std::span<const double> x);

/// Exact eigensystem of A with the orthonormal transform
/// Q_{j,k} = sqrt(2/d) * sin(j*k*pi/d).  Q is symmetric and involutory
/// (Q^2 = I), so forward and inverse transforms coincide numerically; both
/// names are kept for call-site clarity.  Immutable after construction.
class SpectralBasis {
 public:
  explicit SpectralBasis(int d);

  int d() const noexcept { return d_; }
  int n_modes() const noexcept { return d_ - 1; }

  double lambda(int k) const;                      // eigenvalue(d, k)
  const std::vector<double>& lambdas() const noexcept { return lambdas_; }

  /// Q^T x: mode coefficients of a grid vector (length d-1).
  std::vector<double> transform_forward(std::span<const double> x) const;
  /// Q c: grid vector from mode coefficients (length d-1).
  std::vector<double> transform_inverse(std::span<const double> c) const;

  /// In-place variant used by hot loops; in and out may not alias.
  void apply(std::span<const double> in, std::span<double> out) const;

 private:
  int d_;
  std::vector<double> lambdas_;
};

/// Unnormalized DST-I: y_k = sum_{j=1}^{n} x_j sin(j*k*pi/(n+1)), k = 1..n.
/// Direct O(n^2) reference implementation.
void dst_direct(std::span<const double> x, std::span<double> y);

/// Same transform through the fast path when the library was built with FFTW
/// support; falls back to dst_direct otherwise.
void dst_fast(std::span<const double> x, std::span<double> y);

/// True when dst_fast uses an actual fast transform.
bool dst_fast_available() noexcept;

/// Folds mode weights w_k (k = 1..K, any K) into DST-I coefficients c_1..c_n
/// for evaluation at v = m/(n+1): sin(k pi v) has period 2(n+1) in k and is
/// antisymmetric about k = n+1, so the fold is exact.
std::vector<double> fold_modes_to_dst(std::span<const double> w, int n);

}  // namespace chainlab
