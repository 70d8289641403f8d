#include "chainlab/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace chainlab {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::domain_error(what);
}

// Node coordinates like i/d are not exactly representable; a relative nudge
// keeps the rounding maps idempotent on nodes.
constexpr double kNudge = 1e-9;

}  // namespace

FieldGrid::FieldGrid(double horizon, int intervals) : T(horizon), d(intervals) {
  require(T > 0.0, "FieldGrid: horizon must be > 0");
  require(d >= 2, "FieldGrid: d must be >= 2");
}

double FieldGrid::t_node(int j) const {
  require(j >= 0 && j <= d, "FieldGrid: time node index out of range");
  return static_cast<double>(j) * T / d;
}

double FieldGrid::v_node(int i) const {
  require(i >= 0 && i <= d, "FieldGrid: space node index out of range");
  return static_cast<double>(i) / d;
}

int FieldGrid::t_hat_index(double t) const {
  require(t >= 0.0 && t <= T * (1.0 + kNudge), "FieldGrid: t outside [0, T]");
  int j = static_cast<int>(std::floor(t / T * d + kNudge));
  if (j < 0) j = 0;
  if (j > d) j = d;
  return j;
}

int FieldGrid::v_hat_index(double v) const {
  require(v >= -kNudge && v <= 1.0 + kNudge, "FieldGrid: v outside [0, 1]");
  int i = static_cast<int>(std::ceil(v * d - kNudge));
  if (i < 0) i = 0;
  if (i > d) i = d;
  return i;
}

int FieldGrid::fine_step_of_node(int j, int n_steps) const {
  require(n_steps >= 1, "FieldGrid: n_steps must be >= 1");
  require(n_steps % d == 0,
          "FieldGrid: fine grid of " + std::to_string(n_steps) +
              " steps does not contain the d=" + std::to_string(d) + " node times");
  require(j >= 0 && j <= d, "FieldGrid: node index out of range");
  return j * (n_steps / d);
}

std::vector<int> FieldGrid::node_steps(int n_steps) const {
  std::vector<int> steps(d + 1);
  for (int j = 0; j <= d; ++j) steps[j] = fine_step_of_node(j, n_steps);
  return steps;
}

std::vector<double> FieldGrid::dense_ts(int refine) const {
  require(refine >= 1, "FieldGrid: refine must be >= 1");
  std::vector<double> ts(static_cast<std::size_t>(refine) * d + 1);
  for (std::size_t r = 0; r < ts.size(); ++r)
    ts[r] = static_cast<double>(r) * T / (refine * d);
  return ts;
}

std::vector<double> FieldGrid::dense_vs(int refine) const {
  require(refine >= 1, "FieldGrid: refine must be >= 1");
  std::vector<double> vs(static_cast<std::size_t>(refine) * d + 1);
  for (std::size_t r = 0; r < vs.size(); ++r)
    vs[r] = static_cast<double>(r) / (refine * d);
  return vs;
}

}  // namespace chainlab
