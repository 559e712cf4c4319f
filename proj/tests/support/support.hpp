#pragma once

#include <cstdint>
#include <vector>

#include "holsh/cocycle/cocycle.hpp"
#include "holsh/common/rng.hpp"
#include "holsh/maps/smooth_map.hpp"
#include "holsh/pseudo/pseudotrajectory.hpp"

namespace holsh::testing {

/// g(x) = x + x^3 on the line, with S estimated on [-0.1, 0.1].
maps::SmoothMap cubic_line_map();

/// min over x0 of max_k dist(f^k(x0), y_k) for a 1-D map, by a grid search
/// over y_0 ± half_width that repeatedly zooms onto the best cell.
double brute_force_shadow_1d(const maps::SmoothMap& map, const pseudo::Pseudotrajectory& traj,
                             double half_width, int cells = 400, int zooms = 40);

/// Random m x m matrix with entries in [-2, 2] and smallest singular value
/// at least 0.1.
cocycle::MatrixXd random_matrix(Rng& rng, int m);

cocycle::Cocycle random_cocycle(Rng& rng, int m, long k0, long length);

std::vector<cocycle::VectorXd> random_forcing(Rng& rng, int m, long length);

}  // namespace holsh::testing
