#pragma once

#include <string>
#include <vector>

#include "holsh/pseudo/pseudotrajectory.hpp"

namespace holsh::pseudo {

enum class ShadowStatus { ok, fallback, failed };

const char* to_string(ShadowStatus status) noexcept;

struct ShadowingResult {
  Vec x0;
  double epsilon = 0.0;
  std::vector<double> per_step;
  std::string solver;
  ShadowStatus status = ShadowStatus::ok;
  int iterations = 0;
  /// Newton only: final sup of the orbit residual log_{f(z_k)}(z_{k+1}).
  double residual = 0.0;
};

/// Distances dist(f^k(x0), y_k) for k = 0..n.
std::vector<double> distance_profile(const maps::SmoothMap& map, const Pseudotrajectory& traj,
                                     const Vec& x0);

struct OptimalOptions {
  int scan_points = 10000;
  int starts = 32;
  std::uint64_t seed = 0x5eed;
};

/// Exact orbit minimising max_k dist(f^k(x0), y_k).
///
/// Degree-one monotone circle maps: the lifted errors F^k(x0) - y_k are all
/// increasing in x0, so the minimax point is where the largest positive and the
/// largest negative error balance; it is found by bisection. Other 1-D maps use
/// a dense scan followed by golden-section refinement of the best brackets.
/// Higher dimensions use multistart Nelder-Mead in the chart at y_0.
/// Throws DivergenceError when every candidate orbit of a planar map leaves its
/// bounding box.
ShadowingResult shadow_optimal(const maps::SmoothMap& map, const Pseudotrajectory& traj,
                               const OptimalOptions& options = {});

struct NewtonOptions {
  int max_iterations = 50;
  double tolerance = 1e-12;
  bool fallback = true;
  /// The fallback searches over initial points only. Sensitivity to the
  /// initial point grows exponentially along a chaotic orbit, so the search is
  /// skipped on windows longer than this.
  long fallback_max_length = 50;
};

/// Newton refinement of the orbit residual, each step the minimum-norm
/// correction of the linearised system. On non-convergence it falls back to
/// shadow_optimal (status fallback) or reports status failed.
ShadowingResult shadow_newton(const maps::SmoothMap& map, const Pseudotrajectory& traj,
                              const NewtonOptions& options = {});

}  // namespace holsh::pseudo
