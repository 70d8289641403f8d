#pragma once

#include <string>
#include <vector>

#include "chainlab/config.hpp"
#include "chainlab/convergence.hpp"
#include "chainlab/fields.hpp"

namespace chainlab {

/// Flat statistics table; header `name,d,value,stderr,threshold,verdict`,
/// empty cells for absent d / stderr / threshold.
void write_stats_csv(const std::string& path, const std::vector<Statistic>& stats);

/// Dense field matrix; row = t_j (first column the time itself), column = v_i,
/// header row carries the v nodes.
void write_heatmap_csv(const std::string& path, const RandomField& field);

/// Two-column table with the given header names.
void write_curve_csv(const std::string& path, const std::string& x_name,
                     const std::string& y_name, const std::vector<double>& xs,
                     const std::vector<double>& ys);

/// Full report: resolved config echo, statistics, metadata.
void write_report_json(const std::string& path, const ExperimentConfig& config,
                       const ConvergenceReport& report);

/// Minimal static log-log polyline plot.
void write_svg_loglog(const std::string& path, const std::string& title,
                      const std::string& x_label, const std::string& y_label,
                      const std::vector<double>& xs, const std::vector<double>& ys);

}  // namespace chainlab
