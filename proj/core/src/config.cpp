#include "chainlab/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "chainlab/errors.hpp"
#include "chainlab/format.hpp"

namespace chainlab {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double parse_double(const std::string& value, int line) {
  std::size_t pos = 0;
  double out;
  try {
    out = std::stod(value, &pos);
  } catch (const std::exception&) {
    throw ConfigError("expected a number, got '" + value + "'", line);
  }
  if (pos != value.size())
    throw ConfigError("trailing characters after number: '" + value + "'", line);
  return out;
}

long long parse_int(const std::string& value, int line) {
  std::size_t pos = 0;
  long long out;
  try {
    out = std::stoll(value, &pos);
  } catch (const std::exception&) {
    throw ConfigError("expected an integer, got '" + value + "'", line);
  }
  if (pos != value.size())
    throw ConfigError("trailing characters after integer: '" + value + "'", line);
  return out;
}

std::uint64_t parse_u64(const std::string& value, int line) {
  std::size_t pos = 0;
  unsigned long long out;
  try {
    out = std::stoull(value, &pos);
  } catch (const std::exception&) {
    throw ConfigError("expected an unsigned integer, got '" + value + "'", line);
  }
  if (pos != value.size())
    throw ConfigError("trailing characters after integer: '" + value + "'", line);
  return out;
}

std::vector<int> parse_int_list(const std::string& value, int line) {
  std::string cleaned = value;
  std::replace(cleaned.begin(), cleaned.end(), ',', ' ');
  std::istringstream in(cleaned);
  std::vector<int> out;
  std::string token;
  while (in >> token) out.push_back(static_cast<int>(parse_int(token, line)));
  if (out.empty()) throw ConfigError("expected a list of integers", line);
  return out;
}

ExperimentKind parse_kind(const std::string& value, int line) {
  if (value == "deterministic") return ExperimentKind::deterministic;
  if (value == "homogeneous") return ExperimentKind::homogeneous;
  if (value == "full") return ExperimentKind::full;
  if (value == "variance-suite") return ExperimentKind::variance_suite;
  if (value == "tail-check") return ExperimentKind::tail_check;
  throw ConfigError("unknown kind '" + value +
                        "' (expected deterministic, homogeneous, full, "
                        "variance-suite, or tail-check)",
                    line);
}

}  // namespace

const char* kind_name(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::deterministic: return "deterministic";
    case ExperimentKind::homogeneous: return "homogeneous";
    case ExperimentKind::full: return "full";
    case ExperimentKind::variance_suite: return "variance-suite";
    case ExperimentKind::tail_check: return "tail-check";
  }
  return "deterministic";
}

int ExperimentConfig::M_total() const {
  const double exact = static_cast<double>(M_per_unit) * T;
  const double rounded = std::round(exact);
  if (std::abs(exact - rounded) > 1e-9 || rounded < 1.0)
    throw ConfigError("steps_per_unit * horizon must be a positive whole number, got " +
                      std::to_string(exact));
  return static_cast<int>(rounded);
}

ExperimentConfig parse_config_text(const std::string& text) {
  ExperimentConfig config;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  bool have_kind = false;
  std::set<std::string> seen;

  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("expected 'key = value', got '" + trim(raw) + "'", line_no);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("empty key", line_no);
    if (value.empty()) throw ConfigError("empty value for key '" + key + "'", line_no);
    if (!seen.insert(key).second)
      throw ConfigError("duplicate key '" + key + "'", line_no);

    if (key == "kind") {
      config.kind = parse_kind(value, line_no);
      have_kind = true;
    } else if (key == "epsilon") {
      config.epsilon = parse_double(value, line_no);
    } else if (key == "sigma") {
      config.sigma = parse_double(value, line_no);
    } else if (key == "horizon") {
      config.T = parse_double(value, line_no);
    } else if (key == "d_list") {
      config.d_list = parse_int_list(value, line_no);
    } else if (key == "truncation_k") {
      config.K = static_cast<int>(parse_int(value, line_no));
    } else if (key == "steps_per_unit") {
      config.M_per_unit = static_cast<int>(parse_int(value, line_no));
    } else if (key == "replications") {
      config.R = static_cast<int>(parse_int(value, line_no));
    } else if (key == "suite_truncation_k") {
      config.K_suite = static_cast<int>(parse_int(value, line_no));
    } else if (key == "seed") {
      config.seed = parse_u64(value, line_no);
    } else if (key == "workers") {
      config.workers = static_cast<int>(parse_int(value, line_no));
    } else if (key == "out_dir") {
      config.out_dir = value;
    } else {
      throw ConfigError("unknown key '" + key + "'", line_no);
    }
  }
  if (!have_kind) throw ConfigError("missing required key 'kind'");
  validate_config(config);
  return config;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

void validate_config(const ExperimentConfig& c) {
  if (c.epsilon < 0.0) throw ConfigError("epsilon must be >= 0");
  if (c.sigma < 0.0) throw ConfigError("sigma must be >= 0");
  if (c.T <= 0.0) throw ConfigError("horizon must be > 0");
  if (c.d_list.empty()) throw ConfigError("d_list must not be empty");
  for (int d : c.d_list)
    if (d < 2) throw ConfigError("every d must be >= 2, got " + std::to_string(d));
  for (std::size_t i = 0; i + 1 < c.d_list.size(); ++i)
    if (c.d_list[i] >= c.d_list[i + 1])
      throw ConfigError("d_list must be strictly ascending");
  if (c.K < 1) throw ConfigError("truncation_k must be >= 1");
  if (c.K < c.d_list.back())
    throw ConfigError("truncation_k must be >= max(d_list) = " +
                      std::to_string(c.d_list.back()));
  if (c.M_per_unit < 1) throw ConfigError("steps_per_unit must be >= 1");
  if (c.R < 1) throw ConfigError("replications must be >= 1");
  if (c.workers < 1) throw ConfigError("workers must be >= 1");
  if (c.K_suite < c.d_list.back())
    throw ConfigError("suite_truncation_k must be >= max(d_list)");

  const bool needs_fine_grid = c.kind != ExperimentKind::deterministic;
  if (needs_fine_grid) {
    const int m = c.M_total();  // throws when not a whole number
    for (int d : c.d_list) {
      if (m % d != 0)
        throw ConfigError("fine grid (" + std::to_string(m) +
                          " steps) must be divisible by d = " + std::to_string(d));
      if ((c.kind == ExperimentKind::homogeneous || c.kind == ExperimentKind::full) &&
          m % (4 * d) != 0)
        throw ConfigError("fine grid must contain the 4x dense sub-grid: need 4*d = " +
                          std::to_string(4 * d) + " to divide " + std::to_string(m));
    }
  }
  if (c.kind == ExperimentKind::variance_suite) {
    if (c.R < 1000)
      throw ConfigError("variance-suite needs replications >= 1000, got " +
                        std::to_string(c.R));
    if (c.T < 0.5) throw ConfigError("variance-suite needs horizon >= 0.5");
    if (c.sigma <= 0.0) throw ConfigError("variance-suite needs sigma > 0");
    for (int d : c.d_list)
      if (d % 2 != 0)
        throw ConfigError("variance-suite design point v = 1/2 needs even d, got " +
                          std::to_string(d));
  }
  if (c.kind == ExperimentKind::tail_check) {
    bool has_small = false;
    for (int d : c.d_list) has_small = has_small || (d <= 32 && d % 2 == 0);
    if (!has_small)
      throw ConfigError("tail-check needs an even d <= 32 in d_list");
    if (c.sigma <= 0.0) throw ConfigError("tail-check needs sigma > 0");
    if (c.R < 1000) throw ConfigError("tail-check needs replications >= 1000");
  }
}

std::string render_config(const ExperimentConfig& c) {
  std::ostringstream out;
  out << "kind = " << kind_name(c.kind) << "\n";
  out << "epsilon = " << format_double(c.epsilon) << "\n";
  out << "sigma = " << format_double(c.sigma) << "\n";
  out << "horizon = " << format_double(c.T) << "\n";
  out << "d_list =";
  for (int d : c.d_list) out << " " << d;
  out << "\n";
  out << "truncation_k = " << c.K << "\n";
  out << "steps_per_unit = " << c.M_per_unit << "\n";
  out << "replications = " << c.R << "\n";
  out << "suite_truncation_k = " << c.K_suite << "\n";
  out << "seed = " << c.seed << "\n";
  out << "workers = " << c.workers << "\n";
  out << "out_dir = " << c.out_dir << "\n";
  return out.str();
}

}  // namespace chainlab
