#include "chainlab/fields.hpp"

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

std::vector<double> discrete_rates(const SpectralBasis& basis) {
  const int d = basis.d();
  std::vector<double> rates(d - 1);
  for (int k = 1; k <= d - 1; ++k)
    rates[k - 1] = -static_cast<double>(d) * d * basis.lambda(k);
  return rates;
}

std::vector<double> continuum_rates(int K) {
  std::vector<double> rates(K);
  for (int k = 1; k <= K; ++k) rates[k - 1] = kPi * kPi * static_cast<double>(k) * k;
  return rates;
}

}  // namespace

double RandomField::step_eval(double t, double v) const {
  require(t >= 0.0 && t <= grid.T * (1.0 + 1e-12), "step_eval: t outside [0, T]");
  require(v >= 0.0 && v <= 1.0, "step_eval: v outside [0, 1]");
  int j = static_cast<int>(std::floor(t / grid.T * grid.d + 1e-9));
  int i = static_cast<int>(std::floor(v * grid.d + 1e-9));
  if (j > grid.d) j = grid.d;
  if (i > grid.d) i = grid.d;
  return at(j, i);
}

std::vector<std::vector<double>> sigma_d_rows(const BrownianDriver& driver,
                                              const SpectralBasis& basis, double sigma,
                                              std::span<const int> record_steps) {
  const int d = basis.d();
  require(driver.n_modes() >= d - 1, "sigma_d_rows: insufficient modes");
  require(sigma >= 0.0, "sigma_d_rows: sigma must be >= 0");

  ModePaths paths = evolve_ou_family(driver, discrete_rates(basis), record_steps);
  const int n_rec = paths.n_records;

  std::vector<std::vector<double>> rows(n_rec, std::vector<double>(d + 1, 0.0));
  std::vector<double> w(d - 1), grid_vals(d - 1);
  const double scale = sigma * std::numbers::sqrt2;
  for (int r = 0; r < n_rec; ++r) {
    for (int k = 1; k <= d - 1; ++k) w[k - 1] = paths.at(k, r);
    dst_fast(w, grid_vals);
    for (int i = 1; i <= d - 1; ++i) rows[r][i] = scale * grid_vals[i - 1];
  }
  return rows;
}

double s_point(std::span<const double> w, double sigma, double v) {
  double acc = 0.0;
  for (std::size_t idx = 0; idx < w.size(); ++idx)
    acc += w[idx] * std::sin((static_cast<double>(idx) + 1.0) * kPi * v);
  return sigma * std::numbers::sqrt2 * acc;
}

std::vector<std::vector<double>> s_rows(const BrownianDriver& driver, int K,
                                        double sigma, std::span<const int> record_steps,
                                        int n_cells) {
  require(K >= 1 && K <= driver.n_modes(), "s_rows: insufficient modes");
  require(sigma >= 0.0, "s_rows: sigma must be >= 0");
  require(n_cells >= 2, "s_rows: n_cells must be >= 2");

  ModePaths paths = evolve_ou_family(driver, continuum_rates(K), record_steps);
  const int n_rec = paths.n_records;
  const int n = n_cells - 1;

  std::vector<std::vector<double>> rows(n_rec, std::vector<double>(n_cells + 1, 0.0));
  std::vector<double> w(K), interior(n);
  const double scale = sigma * std::numbers::sqrt2;
  for (int r = 0; r < n_rec; ++r) {
    for (int k = 1; k <= K; ++k) w[k - 1] = paths.at(k, r);
    std::vector<double> c = fold_modes_to_dst(w, n);
    dst_fast(c, interior);
    for (int m = 1; m <= n; ++m) rows[r][m] = scale * interior[m - 1];
  }
  return rows;
}

RandomField sigma_d_field(const BrownianDriver& driver, const SpectralBasis& basis,
                          double sigma, const FieldGrid& grid) {
  require(basis.d() == grid.d, "sigma_d_field: basis/grid dimension mismatch");
  require(std::abs(driver.horizon() - grid.T) <= 1e-12 * grid.T,
          "sigma_d_field: driver horizon does not match grid");
  std::vector<int> steps = grid.node_steps(driver.n_steps());
  auto rows = sigma_d_rows(driver, basis, sigma, steps);

  RandomField field{grid, RandomField::Kind::sigma_d, {}};
  field.values.reserve(static_cast<std::size_t>(grid.d + 1) * (grid.d + 1));
  for (auto& row : rows) field.values.insert(field.values.end(), row.begin(), row.end());
  return field;
}

RandomField s_field(const BrownianDriver& driver, int K, double sigma,
                    const FieldGrid& grid) {
  require(std::abs(driver.horizon() - grid.T) <= 1e-12 * grid.T,
          "s_field: driver horizon does not match grid");
  std::vector<int> steps = grid.node_steps(driver.n_steps());
  auto rows = s_rows(driver, K, sigma, steps, grid.d);

  RandomField field{grid, RandomField::Kind::s_truncated, {}};
  field.values.reserve(static_cast<std::size_t>(grid.d + 1) * (grid.d + 1));
  for (auto& row : rows) field.values.insert(field.values.end(), row.begin(), row.end());
  return field;
}

double s_truncation_variance_tail(double sigma, int K) {
  require(sigma >= 0.0 && K >= 1, "s_truncation_variance_tail: bad arguments");
  return sigma * sigma / (kPi * kPi * K);
}

}  // namespace chainlab
