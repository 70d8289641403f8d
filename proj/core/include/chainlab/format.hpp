#pragma once

#include <cmath>
#include <cstdio>
#include <string>

namespace chainlab {

/// Shortest round-trip decimal rendering used for every number that lands in
/// an artifact file; keeps re-runs byte-identical.
inline std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace chainlab
