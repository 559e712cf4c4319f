#include "holsh/dichotomy/bounded_solutions.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "holsh/common/error.hpp"
#include "holsh/common/stats.hpp"

namespace holsh::dichotomy {

namespace {

// Start index and step count of a part of length N.
std::pair<long, long> part_window(WindowPart part, long s, long N) {
  switch (part) {
    case WindowPart::forward: return {s, N};
    case WindowPart::backward: return {s - N, N};
    case WindowPart::whole: return {s - N, 2 * N};
  }
  return {s, N};
}

}  // namespace

const char* to_string(WindowPart p) noexcept {
  switch (p) {
    case WindowPart::forward: return "forward";
    case WindowPart::backward: return "backward";
    case WindowPart::whole: return "whole";
  }
  return "?";
}

BoundedSolutionEstimate bounded_solution_check(const Cocycle& c, WindowPart part, long N,
                                               const BoundedCheckOptions& options) {
  if (N < 1) throw PreconditionError("part length must be positive");
  const long s = std::clamp(options.split, c.k0(), c.k1() + 1);
  const auto [i, steps] = part_window(part, s, N);
  if (i < c.k0() || i + steps > c.k1() + 1)
    throw WindowError(std::string(to_string(part)) + " part of length " + std::to_string(N) +
                      " does not fit the cocycle window");
  cocycle::QOptions q;
  q.samples = std::max(options.trials, c.dim());
  q.seed = options.seed;
  q.jobs = options.jobs;
  const auto est = cocycle::estimate_Q(c, i, steps, q);
  return {est.Q_hat, i, steps};
}

BoundedSolutionEstimate bounded_solution_check(const Cocycle& c, WindowPart part,
                                               const BoundedCheckOptions& options) {
  const long s = std::clamp(options.split, c.k0(), c.k1() + 1);
  const long ahead = c.k1() + 1 - s;
  const long behind = s - c.k0();
  long N = 0;
  switch (part) {
    case WindowPart::forward: N = ahead; break;
    case WindowPart::backward: N = behind; break;
    case WindowPart::whole: N = std::min(ahead, behind); break;
  }
  if (N < 1) throw WindowError(std::string(to_string(part)) + " part of the window is empty");
  return bounded_solution_check(c, part, N, options);
}

BoundedTrend bounded_solution_trend(const Cocycle& c, WindowPart part, std::span<const long> N_grid,
                                    const BoundedCheckOptions& options, double slope_threshold) {
  if (N_grid.size() < 2) throw PreconditionError("trend needs at least two lengths");
  for (std::size_t j = 1; j < N_grid.size(); ++j)
    if (N_grid[j] <= N_grid[j - 1]) throw PreconditionError("trend lengths must increase");
  BoundedTrend t;
  std::vector<double> x, y;
  for (long N : N_grid) {
    const auto e = bounded_solution_check(c, part, N, options);
    t.N.push_back(N);
    t.L_hat.push_back(e.L_hat);
    x.push_back(std::log(static_cast<double>(N)));
    y.push_back(std::log(std::max(e.L_hat, 1e-300)));
  }
  t.slope = fit_line(x, y).slope;
  t.bounded = t.slope < slope_threshold;
  return t;
}

}  // namespace holsh::dichotomy
