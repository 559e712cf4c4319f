#include "holsh/cocycle/slow_growth.hpp"

#include <cmath>
#include <numbers>

#include "holsh/common/error.hpp"
#include "holsh/common/parallel.hpp"
#include "holsh/common/rng.hpp"
#include "holsh/common/stats.hpp"

namespace holsh::cocycle {

namespace {

std::vector<VectorXd> candidate_directions(int m) {
  std::vector<VectorXd> out;
  if (m == 1) return out;  // only the sign flip, added per index
  if (m == 2) {
    for (int j = 0; j < 16; ++j) {
      const double t = 2.0 * std::numbers::pi * j / 16.0;
      VectorXd v(2);
      v << std::cos(t), std::sin(t);
      out.push_back(v);
    }
    return out;
  }
  for (int j = 0; j < m; ++j) {
    out.push_back(VectorXd::Unit(m, j));
    out.push_back(-VectorXd::Unit(m, j));
  }
  if (m == 3) {
    for (int s = 0; s < 8; ++s) {
      VectorXd v(3);
      v << (s & 1 ? -1.0 : 1.0), (s & 2 ? -1.0 : 1.0), (s & 4 ? -1.0 : 1.0);
      out.push_back(v / std::sqrt(3.0));
    }
  }
  return out;
}

struct Climb {
  double F = 0.0;
  long evaluations = 0;
  std::vector<VectorXd> w;
};

Climb climb(const MinSupSolver& solver, std::vector<VectorXd> w, const std::vector<VectorXd>& dirs,
            int max_sweeps) {
  const int m = solver.dim();
  const long N = solver.length();
  VectorXd vp = solver.particular(solver.stack(w));
  auto best = solver.minimize(vp);
  Climb out;
  out.evaluations = 1;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    bool improved = false;
    for (long k = 0; k < N; ++k) {
      const auto gk = solver.G().middleCols(k * m, m);
      auto try_direction = [&](const VectorXd& c) {
        const VectorXd cand = vp + gk * (c - w[k]);
        // The old minimiser bounds the new minimum from above; if even that
        // does not beat the current value, the move cannot help.
        if (solver.objective(cand, best.y) <= best.F * (1.0 + 1e-12)) return;
        auto trial = solver.minimize(cand);
        ++out.evaluations;
        if (trial.F > best.F * (1.0 + 1e-12)) {
          best = trial;
          vp = cand;
          w[k] = c;
          improved = true;
        }
      };
      try_direction(-w[k]);
      for (const VectorXd& c : dirs) try_direction(c);
    }
    if (!improved) break;
  }
  out.F = best.F;
  out.w = std::move(w);
  return out;
}

}  // namespace

QEstimate estimate_Q(const Cocycle& c, long i, long N, const QOptions& options) {
  if (N < 1) throw PreconditionError("estimate_Q needs N >= 1");
  const MinSupSolver solver(c, i, N);
  const int m = c.dim();
  const int draws = std::max(options.samples, m);
  const auto dirs = candidate_directions(m);

  std::vector<Climb> results(static_cast<std::size_t>(draws));
  parallel_for(results.size(), options.jobs, [&](std::size_t d) {
    std::vector<VectorXd> w(static_cast<std::size_t>(N));
    if (static_cast<int>(d) < m) {
      for (auto& wk : w) wk = VectorXd::Unit(m, static_cast<long>(d));
    } else {
      Rng rng = make_stream(options.seed, d);
      for (auto& wk : w) {
        VectorXd v(m);
        do {
          for (int j = 0; j < m; ++j) v(j) = standard_normal(rng);
        } while (v.norm() < 1e-12);
        wk = v.normalized();
      }
    }
    results[d] = climb(solver, std::move(w), dirs, options.max_sweeps);
  });

  QEstimate q;
  q.draws = draws;
  for (int d = 0; d < draws; ++d) {
    q.evaluations += results[d].evaluations;
    if (d == 0 || results[d].F > q.Q_hat) {
      q.Q_hat = results[d].F;
      q.best_draw = d;
    }
  }
  q.w_best = std::move(results[q.best_draw].w);
  return q;
}

const char* to_string(GrowthRegime r) noexcept {
  switch (r) {
    case GrowthRegime::bounded: return "bounded-solution regime";
    case GrowthRegime::sublinear: return "sublinear";
    case GrowthRegime::linear_or_worse: return "linear or worse";
  }
  return "?";
}

GrowthRegime classify_growth(double gamma) noexcept {
  if (gamma < 0.2) return GrowthRegime::bounded;
  if (gamma <= 0.9) return GrowthRegime::sublinear;
  return GrowthRegime::linear_or_worse;
}

SlowGrowthFit fit_slow_growth(const Cocycle& c, std::span<const long> N_grid, const QOptions& options) {
  return fit_slow_growth(c, N_grid, c.k0(), options);
}

SlowGrowthFit fit_slow_growth(const Cocycle& c, std::span<const long> N_grid, long i,
                              const QOptions& options) {
  if (N_grid.size() < 4) throw PreconditionError("slow-growth fit needs at least 4 values of N");
  for (std::size_t j = 0; j < N_grid.size(); ++j) {
    if (N_grid[j] < 1 || (j > 0 && N_grid[j] <= N_grid[j - 1])) {
      throw PreconditionError("N grid must be positive and increasing");
    }
  }
  SlowGrowthFit fit;
  std::vector<double> lx;
  std::vector<double> ly;
  for (long N : N_grid) {
    const QEstimate q = estimate_Q(c, i, N, options);
    if (!(q.Q_hat > 0.0)) throw Error("estimate_Q returned a nonpositive value");
    fit.N.push_back(N);
    fit.Q_hat.push_back(q.Q_hat);
    lx.push_back(std::log(static_cast<double>(N)));
    ly.push_back(std::log(q.Q_hat));
  }
  const LineFit line = fit_line(lx, ly);
  fit.gamma = line.slope;
  fit.gamma_stderr = line.slope_stderr;
  fit.L = std::exp(line.intercept);
  fit.rms_residual = line.rms_residual;
  fit.regime = classify_growth(fit.gamma);
  return fit;
}

}  // namespace holsh::cocycle
