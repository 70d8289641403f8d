#include "chainlab/report_io.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "chainlab/format.hpp"
#include "chainlab/version.hpp"

namespace chainlab {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);  // LF line endings everywhere
  if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
  return out;
}

std::string cell(double x) { return std::isnan(x) ? std::string() : format_double(x); }

using ordered_json = nlohmann::ordered_json;

ordered_json number_or_null(double x) {
  if (std::isnan(x)) return nullptr;
  return x;
}

}  // namespace

void write_stats_csv(const std::string& path, const std::vector<Statistic>& stats) {
  auto out = open_out(path);
  out << "name,d,value,stderr,threshold,verdict\n";
  for (const auto& s : stats) {
    out << s.name << ',';
    if (s.d >= 0) out << s.d;
    out << ',' << cell(s.value) << ',' << cell(s.std_error) << ',' << cell(s.threshold)
        << ',' << verdict_name(s.verdict) << '\n';
  }
}

void write_heatmap_csv(const std::string& path, const RandomField& field) {
  auto out = open_out(path);
  const int d = field.grid.d;
  out << "t\\v";
  for (int i = 0; i <= d; ++i) out << ',' << format_double(field.grid.v_node(i));
  out << '\n';
  for (int j = 0; j <= d; ++j) {
    out << format_double(field.grid.t_node(j));
    for (int i = 0; i <= d; ++i) out << ',' << format_double(field.at(j, i));
    out << '\n';
  }
}

void write_curve_csv(const std::string& path, const std::string& x_name,
                     const std::string& y_name, const std::vector<double>& xs,
                     const std::vector<double>& ys) {
  if (xs.size() != ys.size())
    throw std::invalid_argument("write_curve_csv: size mismatch");
  auto out = open_out(path);
  out << x_name << ',' << y_name << '\n';
  for (std::size_t i = 0; i < xs.size(); ++i)
    out << format_double(xs[i]) << ',' << format_double(ys[i]) << '\n';
}

void write_report_json(const std::string& path, const ExperimentConfig& config,
                       const ConvergenceReport& report) {
  ordered_json j;
  j["tool"] = "chainlab";
  j["version"] = version_string;

  ordered_json cfg;
  cfg["kind"] = kind_name(config.kind);
  cfg["epsilon"] = config.epsilon;
  cfg["sigma"] = config.sigma;
  cfg["horizon"] = config.T;
  cfg["d_list"] = config.d_list;
  cfg["truncation_k"] = config.K;
  cfg["steps_per_unit"] = config.M_per_unit;
  cfg["replications"] = config.R;
  cfg["suite_truncation_k"] = config.K_suite;
  cfg["seed"] = config.seed;
  cfg["workers"] = config.workers;
  cfg["out_dir"] = config.out_dir;
  j["config"] = cfg;

  ordered_json meta = ordered_json::object();
  for (const auto& [k, v] : report.metadata) meta[k] = v;
  j["metadata"] = meta;

  ordered_json stats = ordered_json::array();
  for (const auto& s : report.stats) {
    ordered_json row;
    row["name"] = s.name;
    row["d"] = s.d >= 0 ? ordered_json(s.d) : ordered_json(nullptr);
    row["value"] = number_or_null(s.value);
    row["stderr"] = number_or_null(s.std_error);
    row["threshold"] = number_or_null(s.threshold);
    row["verdict"] = verdict_name(s.verdict);
    stats.push_back(row);
  }
  j["statistics"] = stats;
  j["all_pass"] = report.all_pass();

  auto out = open_out(path);
  out << j.dump(2) << '\n';
}

void write_svg_loglog(const std::string& path, const std::string& title,
                      const std::string& x_label, const std::string& y_label,
                      const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2)
    throw std::invalid_argument("write_svg_loglog: need >= 2 points");
  const int width = 640, height = 480, margin = 60;

  std::vector<double> lx(xs.size()), ly(ys.size());
  double x_min = 1e300, x_max = -1e300, y_min = 1e300, y_max = -1e300;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!(xs[i] > 0.0) || !(ys[i] > 0.0))
      throw std::invalid_argument("write_svg_loglog: nonpositive data");
    lx[i] = std::log10(xs[i]);
    ly[i] = std::log10(ys[i]);
    x_min = std::min(x_min, lx[i]);
    x_max = std::max(x_max, lx[i]);
    y_min = std::min(y_min, ly[i]);
    y_max = std::max(y_max, ly[i]);
  }
  if (x_max == x_min) x_max = x_min + 1.0;
  if (y_max == y_min) y_max = y_min + 1.0;

  auto px = [&](double v) {
    return margin + (v - x_min) / (x_max - x_min) * (width - 2 * margin);
  };
  auto py = [&](double v) {
    return height - margin - (v - y_min) / (y_max - y_min) * (height - 2 * margin);
  };

  auto out = open_out(path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' ' << height
      << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" "
      << "font-family=\"monospace\" font-size=\"14\">" << title << "</text>\n";
  out << "<line x1=\"" << margin << "\" y1=\"" << height - margin << "\" x2=\""
      << width - margin << "\" y2=\"" << height - margin
      << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\"" << margin
      << "\" y2=\"" << height - margin << "\" stroke=\"black\"/>\n";
  out << "<text x=\"" << width / 2 << "\" y=\"" << height - 16
      << "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"12\">log10 "
      << x_label << "</text>\n";
  out << "<text x=\"18\" y=\"" << height / 2
      << "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"12\" "
      << "transform=\"rotate(-90 18 " << height / 2 << ")\">log10 " << y_label
      << "</text>\n";

  out << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"2\" points=\"";
  for (std::size_t i = 0; i < lx.size(); ++i) {
    if (i) out << ' ';
    out << format_double(px(lx[i])) << ',' << format_double(py(ly[i]));
  }
  out << "\"/>\n";
  for (std::size_t i = 0; i < lx.size(); ++i)
    out << "<circle cx=\"" << format_double(px(lx[i])) << "\" cy=\""
        << format_double(py(ly[i])) << "\" r=\"3\" fill=\"crimson\"/>\n";

  // Axis extent labels.
  out << "<text x=\"" << margin << "\" y=\"" << height - margin + 16
      << "\" font-family=\"monospace\" font-size=\"10\">" << format_double(x_min)
      << "</text>\n";
  out << "<text x=\"" << width - margin << "\" y=\"" << height - margin + 16
      << "\" text-anchor=\"end\" font-family=\"monospace\" font-size=\"10\">"
      << format_double(x_max) << "</text>\n";
  out << "<text x=\"" << margin - 4 << "\" y=\"" << height - margin
      << "\" text-anchor=\"end\" font-family=\"monospace\" font-size=\"10\">"
      << format_double(y_min) << "</text>\n";
  out << "<text x=\"" << margin - 4 << "\" y=\"" << margin + 4
      << "\" text-anchor=\"end\" font-family=\"monospace\" font-size=\"10\">"
      << format_double(y_max) << "</text>\n";
  out << "</svg>\n";
}

}  // namespace chainlab
