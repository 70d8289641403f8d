#pragma once

#include <string>
#include <vector>

#include "chainlab/config.hpp"
#include "chainlab/convergence.hpp"

namespace chainlab {

struct RunArtifacts {
  int exit_code = 0;  // 0 iff all declared checks pass
  ConvergenceReport report;
  std::vector<std::string> files;  // artifact paths, in write order
};

/// Runs the experiment described by config, writing report.json, stats.csv
/// and the kind-specific plot data into config.out_dir (created if missing).
/// Identical (config, seed) runs produce byte-identical artifacts for any
/// worker count.
RunArtifacts run_experiment(const ExperimentConfig& config);

/// Dry run: resolved parameters, derived quantities (step sizes, truncation
/// tails, memory), oracle applicability, and the list of checks; no
/// computation, no files.
std::string describe_experiment(const ExperimentConfig& config);

}  // namespace chainlab
