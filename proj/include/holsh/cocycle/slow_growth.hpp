#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "holsh/cocycle/min_sup.hpp"

namespace holsh::cocycle {

struct QOptions {
  /// Number of forcing sequences to climb from; the first m are the constant
  /// sequences w_k = e_j, the rest are random unit vectors.
  int samples = 16;
  std::uint64_t seed = 1;
  int max_sweeps = 8;
  unsigned jobs = 1;
};

/// Lower bound on Q(i, N) = max over |w_k| <= 1 of F(i, N, {w}).
struct QEstimate {
  double Q_hat = 0.0;
  int draws = 0;
  long evaluations = 0;
  int best_draw = 0;
  std::vector<VectorXd> w_best;
};

/// F is convex in w, so its maximum over the product of balls sits at unit
/// vectors. Every draw is improved by coordinate hill climbing over a finite
/// set of unit directions per index; the best draw wins, ties going to the
/// lowest draw index.
QEstimate estimate_Q(const Cocycle& c, long i, long N, const QOptions& options = {});

enum class GrowthRegime { bounded, sublinear, linear_or_worse };

const char* to_string(GrowthRegime r) noexcept;

/// Q̂(N) ≈ L N^γ fitted in log-log scale.
struct SlowGrowthFit {
  std::vector<long> N;
  std::vector<double> Q_hat;
  double L = 0.0;
  double gamma = 0.0;
  double gamma_stderr = 0.0;
  double rms_residual = 0.0;
  GrowthRegime regime = GrowthRegime::bounded;
};

/// γ̂ < 0.2 is bounded, γ̂ in [0.2, 0.9] sublinear, above that linear or worse.
GrowthRegime classify_growth(double gamma) noexcept;

/// Fits γ from Q̂(i, N) over N_grid (at least 4 increasing values). The
/// problems start at i, which defaults to the first cocycle index.
SlowGrowthFit fit_slow_growth(const Cocycle& c, std::span<const long> N_grid,
                              const QOptions& options = {});
SlowGrowthFit fit_slow_growth(const Cocycle& c, std::span<const long> N_grid, long i,
                              const QOptions& options);

}  // namespace holsh::cocycle
