#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "holsh/maps/circle_example.hpp"

namespace holsh::pseudo {

/// Outcome of one randomized sweep of pseudotrajectories near u.
struct PropositionSweep {
  std::string name;
  long runs = 0;
  long kept = 0;          // runs satisfying the hypothesis of the bound
  long violations = 0;
  long checked_points = 0;
  double worst_ratio = 0.0;  // max over points of distance / bound
};

struct CircleSweepOptions {
  long runs = 1000;
  double d_min = 1e-9;
  double d_max = 1e-4;
  long max_window = 20000;
  std::uint64_t seed = 7;
};

/// Backward pseudotrajectories {y_k}_{k<=0} with y_0 in U_u stay within
/// 2 d^{1/3} of the backward orbit of y_0.
PropositionSweep sweep_backward_cube_root(const maps::CircleExample& ex, const CircleSweepOptions& o);

/// Pseudotrajectories that stay in U_u for k in [0, n] satisfy |y_k| < 2 d^{1/3}
/// for k <= n - M(d), where M(d) bounds the time a point at 2 d^{1/3} needs to
/// leave U_u under the slowest admissible drift y + y^3 - d.
PropositionSweep sweep_neutral_confinement(const maps::CircleExample& ex, const CircleSweepOptions& o);

/// Pseudotrajectories on [0, n] with y_n in U_u satisfy
/// dist(y_{n-k}, f^{-k}(y_n)) <= d k.
PropositionSweep sweep_backward_linear(const maps::CircleExample& ex, const CircleSweepOptions& o);

std::array<PropositionSweep, 3> circle_proposition_sweeps(const maps::CircleExample& ex,
                                                          const CircleSweepOptions& o);

/// Steps z_{j+1} = z_j + z_j^3 - d needs from z_0 = 2 d^{1/3} to reach delta.
long escape_steps(double d, double delta);

}  // namespace holsh::pseudo
