#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "chainlab/brownian.hpp"
#include "chainlab/fields.hpp"
#include "chainlab/grid.hpp"
#include "chainlab/spectral.hpp"

namespace chainlab {

enum class Verdict { pass, fail, info, skip };

const char* verdict_name(Verdict v);

/// One row of the flat statistics table.  d = -1 when the statistic is not
/// tied to a resolution; std_error / threshold are NaN when absent.
struct Statistic {
  std::string name;
  int d = -1;
  double value = std::numeric_limits<double>::quiet_NaN();
  double std_error = std::numeric_limits<double>::quiet_NaN();
  double threshold = std::numeric_limits<double>::quiet_NaN();
  Verdict verdict = Verdict::info;
};

Statistic info_stat(std::string name, int d, double value,
                    double std_error = std::numeric_limits<double>::quiet_NaN());

/// PASS iff value <= threshold.
Statistic check_le(std::string name, int d, double value, double threshold);

/// PASS iff value >= threshold.
Statistic check_ge(std::string name, int d, double value, double threshold);

struct ConvergenceReport {
  std::vector<Statistic> stats;
  std::map<std::string, std::string> metadata;

  bool all_pass() const;
  void add(Statistic s) { stats.push_back(std::move(s)); }
  void append(const std::vector<Statistic>& more);
};

/// Max absolute difference over shared grid nodes.
double supnorm_distance(const RandomField& a, const RandomField& b);

/// Sup over the dense sub-grid of the three telescoping terms through the
/// rounded anchor (t_hat, v_hat):
///   term1 = sup |Sigma_d(t, v_hat) - Sigma_d(t_hat, v_hat)|
///   term2 = sup |Sigma_d(t_hat, v_hat) - S(t_hat, v_hat)|
///   term3 = sup |S(t_hat, v_hat) - S(t, v)|
///   total = sup |Sigma_d(t, v_hat) - S(t, v)|
/// total <= term1 + term2 + term3 exactly on every path.
struct SplitTerms {
  double term1 = 0.0;
  double term2 = 0.0;
  double term3 = 0.0;
  double total = 0.0;
};

SplitTerms split_distance(const BrownianDriver& driver, const SpectralBasis& basis,
                          int K, double sigma, const FieldGrid& grid, int refine = 4);

/// Variance-bound measurements.  Mode coordinates are drawn from the exact
/// joint OU transition law (no time-discretization bias); the production
/// left-endpoint scheme damps high-mode variance by 2x/(e^{2x}-1) and cannot
/// resolve these statistics at any affordable step size.
struct VarianceSuiteConfig {
  double sigma = 1.0;
  double T = 0.5;
  std::vector<int> d_list{16, 32, 64, 128};
  int K_suite = 2048;  // continuum reference truncation
  int R = 1000;
  std::uint64_t seed = 1;
};

std::vector<Statistic> variance_bound_suite(const VarianceSuiteConfig& config);

/// Tail behaviour of the time-increment sup of Sigma_d over one grid cell
/// [T/2, T/2 + T/d], plus a scalar Gaussian sanity case and a matched
/// Gaussian-concentration oracle for the log-tail doubling factor.
struct TailCheckConfig {
  double sigma = 1.0;
  double T = 0.5;
  int d = 32;
  int M_total = 2048;
  int R = 10000;
  std::uint64_t seed = 1;
};

std::vector<Statistic> tail_check(const TailCheckConfig& config);

/// Theorem-level study: E[sup |Xi_d - X|] over the node lattice per d on
/// shared drivers, trend and slope, per-seed monotonicity proxy.
struct FullCheckConfig {
  double epsilon = 1.0;
  double sigma = 1.0;
  double T = 0.5;
  std::vector<int> d_list{16, 32, 64, 128};
  int K = 512;
  int M_total = 2048;
  int R = 256;
  std::uint64_t seed = 1;
  int monotone_seeds = 100;
  double slack = 1.10;
  int workers = 1;
  std::string stat_prefix = "full";  // "sigma" when run with epsilon = 0
};

ConvergenceReport full_theorem_check(const FullCheckConfig& config);

}  // namespace chainlab
