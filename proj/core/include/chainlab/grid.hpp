#pragma once

#include <vector>

namespace chainlab {

/// Space-time evaluation lattice: t_j = j T/d (j = 0..d), v_i = i/d (i = 0..d),
/// with the rounding maps used by the sup-norm argument: t_hat floors to the
/// grid, v_hat takes the right endpoint of the containing cell.  Both maps are
/// idempotent on nodes (a small tolerance absorbs representation error of i/d).
struct FieldGrid {
  double T = 1.0;
  int d = 2;

  FieldGrid(double horizon, int intervals);

  double t_node(int j) const;
  double v_node(int i) const;

  /// Index j with t in [t_j, t_{j+1}); clamped to [0, d].
  int t_hat_index(double t) const;
  /// Index i with v in (v_{i-1}, v_i]; clamped to [0, d]; v_hat(v_i) = v_i.
  int v_hat_index(double v) const;

  double t_hat(double t) const { return t_node(t_hat_index(t)); }
  double v_hat(double v) const { return v_node(v_hat_index(v)); }

  /// Fine-grid step index of node j when [0, T] carries n_steps steps.
  /// Throws if the node times do not embed in the fine grid (d | n_steps).
  int fine_step_of_node(int j, int n_steps) const;
  std::vector<int> node_steps(int n_steps) const;

  /// Dense sub-grid refining every cell `refine` times (size refine*d + 1).
  std::vector<double> dense_ts(int refine) const;
  std::vector<double> dense_vs(int refine) const;
};

}  // namespace chainlab
