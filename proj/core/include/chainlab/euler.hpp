#pragma once

#include <span>
#include <vector>

#include "chainlab/brownian.hpp"
#include "chainlab/fields.hpp"
#include "chainlab/grid.hpp"
#include "chainlab/spectral.hpp"

namespace chainlab {

/// Particle positions Xi^i, i = 0..d, with the boundary entries pinned
/// exactly at every step.
struct ChainState {
  int d = 2;
  double t = 0.0;
  std::vector<double> positions;  // size d+1
};

/// Which raw particle system is integrated.
enum class ChainSystem {
  pulled,       // init i/d, boundary (0, 1 + eps t), noise sigma
  homogeneous,  // init 0,  boundary (0, 0),          noise sigma
};

struct EulerSpec {
  int d = 8;
  double epsilon = 1.0;
  double sigma = 1.0;
  ChainSystem system = ChainSystem::pulled;
};

/// One explicit step: Xi <- Xi + d^2 (A Xi + boundary source) delta + noise,
/// where scaled_noise holds sqrt(d) sigma dB^{i,d} for i = 1..d-1.  Boundary
/// entries are overwritten exactly at the new time.  Enforces the stability
/// gate 4 d^2 delta < 2 (throws ConfigError).
void euler_step(ChainState& state, double delta, std::span<const double> scaled_noise,
                double epsilon, ChainSystem system);

/// Euler-Maruyama trajectory on the driver's fine grid, sampled at the
/// FieldGrid node times.  Noise comes from coupled_chain_noise, so the run is
/// pathwise comparable with sigma_d_field built from the same driver.
RandomField integrate(const EulerSpec& spec, const BrownianDriver& driver,
                      const SpectralBasis& basis, const FieldGrid& grid);

}  // namespace chainlab
