#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "holsh/cocycle/slow_growth.hpp"
#include "holsh/dichotomy/splitting.hpp"

namespace holsh::dichotomy {

/// Part of the window around the split index s. For a length N the forward
/// part is [s, s + N], the backward part [s - N, s] and the whole part
/// [s - N, s + N].
enum class WindowPart { forward, backward, whole };

const char* to_string(WindowPart p) noexcept;

struct BoundedSolutionEstimate {
  double L_hat = 0.0;
  long i = 0;
  long N = 0;
};

struct BoundedCheckOptions {
  int trials = 16;
  std::uint64_t seed = 1;
  long split = 0;
  unsigned jobs = 1;
};

/// L̂ = largest least sup norm found over forcings with |w_k| <= 1 on the
/// largest window of the requested part that fits in the cocycle.
BoundedSolutionEstimate bounded_solution_check(const Cocycle& c, WindowPart part,
                                               const BoundedCheckOptions& options = {});

/// The same estimate with the part length fixed to N.
BoundedSolutionEstimate bounded_solution_check(const Cocycle& c, WindowPart part, long N,
                                               const BoundedCheckOptions& options);

struct BoundedTrend {
  std::vector<long> N;
  std::vector<double> L_hat;
  double slope = 0.0;   // of log L̂ against log N
  bool bounded = false; // slope below the threshold
};

/// L̂ over a grid of part lengths (at least 2 increasing values).
BoundedTrend bounded_solution_trend(const Cocycle& c, WindowPart part, std::span<const long> N_grid,
                                    const BoundedCheckOptions& options = {},
                                    double slope_threshold = 0.1);

}  // namespace holsh::dichotomy
