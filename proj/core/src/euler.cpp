#include "chainlab/euler.hpp"

#include <cmath>
#include <string>

#include "chainlab/errors.hpp"

namespace chainlab {

namespace {

void check_stability(int d, double delta) {
  // Explicit scheme for drift matrix d^2 A, spectral radius < 4 d^2.
  if (!(4.0 * d * d * delta < 2.0))
    throw ConfigError("euler: stability gate violated, need delta < 1/(2 d^2) but "
                      "delta = " + std::to_string(delta) + " at d = " + std::to_string(d));
}

}  // namespace

void euler_step(ChainState& state, double delta, std::span<const double> scaled_noise,
                double epsilon, ChainSystem system) {
  const int d = state.d;
  if (state.positions.size() != static_cast<std::size_t>(d) + 1)
    throw std::domain_error("euler_step: state size mismatch");
  if (scaled_noise.size() != static_cast<std::size_t>(d) - 1)
    throw std::domain_error("euler_step: noise size mismatch");
  check_stability(d, delta);

  const double d2dt = static_cast<double>(d) * d * delta;
  auto& x = state.positions;
  double left = x[0];
  for (int i = 1; i <= d - 1; ++i) {
    const double cur = x[i];
    x[i] = cur + d2dt * (left - 2.0 * cur + x[i + 1]) + scaled_noise[i - 1];
    left = cur;
  }
  state.t += delta;
  x[0] = 0.0;
  x[d] = system == ChainSystem::pulled ? 1.0 + epsilon * state.t : 0.0;
}

RandomField integrate(const EulerSpec& spec, const BrownianDriver& driver,
                      const SpectralBasis& basis, const FieldGrid& grid) {
  const int d = spec.d;
  if (basis.d() != d || grid.d != d)
    throw std::domain_error("integrate: basis/grid dimension mismatch");
  if (std::abs(driver.horizon() - grid.T) > 1e-12 * grid.T)
    throw std::domain_error("integrate: driver horizon does not match grid");
  const int m = driver.n_steps();
  const double delta = driver.dt();
  check_stability(d, delta);

  std::vector<int> node_steps = grid.node_steps(m);
  std::vector<double> noise = coupled_chain_noise(driver, basis);
  const double noise_scale = std::sqrt(static_cast<double>(d)) * spec.sigma;

  ChainState state;
  state.d = d;
  state.t = 0.0;
  state.positions.resize(d + 1);
  for (int i = 0; i <= d; ++i)
    state.positions[i] =
        spec.system == ChainSystem::pulled ? static_cast<double>(i) / d : 0.0;

  RandomField out{grid, RandomField::Kind::chain_euler, {}};
  out.values.assign(static_cast<std::size_t>(d + 1) * (d + 1), 0.0);
  auto record = [&](int row) {
    for (int i = 0; i <= d; ++i)
      out.values[static_cast<std::size_t>(row) * (d + 1) + i] = state.positions[i];
  };

  std::size_t next = 0;
  if (node_steps[next] == 0) record(static_cast<int>(next++));
  std::vector<double> step_noise(d - 1);
  for (int j = 1; j <= m && next < node_steps.size(); ++j) {
    for (int i = 1; i <= d - 1; ++i)
      step_noise[i - 1] =
          noise_scale * noise[static_cast<std::size_t>(i - 1) * m + (j - 1)];
    euler_step(state, delta, step_noise, spec.epsilon, spec.system);
    if (node_steps[next] == j) record(static_cast<int>(next++));
  }
  return out;
}

}  // namespace chainlab
