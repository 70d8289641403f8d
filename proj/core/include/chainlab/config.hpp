#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace chainlab {

enum class ExperimentKind { deterministic, homogeneous, full, variance_suite, tail_check };

const char* kind_name(ExperimentKind k);

/// Flat experiment configuration.  File format: `key = value` lines, `#`
/// comments, blank lines; unknown or duplicate keys are hard errors with the
/// offending line number.
struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::deterministic;
  double epsilon = 1.0;        // epsilon
  double sigma = 1.0;          // sigma
  double T = 0.5;              // horizon
  std::vector<int> d_list{16, 32, 64, 128};
  int K = 512;                 // truncation_k
  int M_per_unit = 4096;       // steps_per_unit
  int R = 256;                 // replications
  int K_suite = 2048;          // suite_truncation_k
  std::uint64_t seed = 20260824;
  int workers = 1;
  std::string out_dir = "out";

  /// Fine steps on [0, T]; requires M_per_unit * T to be a whole number.
  int M_total() const;
};

ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);

/// Cross-field checks (divisibility, suite requirements, ...).  Throws
/// ConfigError with a descriptive message.
void validate_config(const ExperimentConfig& config);

/// Canonical `key = value` rendering; parse_config_text round-trips it.
std::string render_config(const ExperimentConfig& config);

}  // namespace chainlab
