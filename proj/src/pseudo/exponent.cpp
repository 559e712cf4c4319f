#include "holsh/pseudo/exponent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "holsh/common/error.hpp"
#include "holsh/common/parallel.hpp"
#include "holsh/common/stats.hpp"

namespace holsh::pseudo {

WindowRule WindowRule::fixed(long n) {
  WindowRule r;
  r.kind = Kind::fixed;
  r.n = n;
  return r;
}

WindowRule WindowRule::power(double C, double omega) {
  WindowRule r;
  r.kind = Kind::power;
  r.C = C;
  r.omega = omega;
  return r;
}

long WindowRule::window(double d) const {
  if (kind == Kind::fixed) return std::max(1L, n);
  const double len = std::ceil(C * std::pow(d, -omega) - 1e-9);
  if (!(len >= 1.0) || len > 1e9) throw PreconditionError("window length out of range");
  return static_cast<long>(len);
}

std::vector<double> geometric_grid(double lo, double hi, int points) {
  if (!(lo > 0.0 && hi > lo) || points < 2) throw PreconditionError("invalid geometric grid");
  std::vector<double> out(points);
  const double step = std::log(hi / lo) / (points - 1);
  for (int i = 0; i < points; ++i) out[i] = lo * std::exp(step * i);
  out.back() = hi;
  return out;
}

SolverKind parse_solver_kind(const std::string& text) {
  if (text == "optimal") return SolverKind::optimal;
  if (text == "newton") return SolverKind::newton;
  throw PreconditionError("unknown solver: " + text);
}

const char* to_string(SolverKind kind) noexcept {
  return kind == SolverKind::optimal ? "optimal" : "newton";
}

ExponentEstimate estimate_holder_exponent(const maps::SmoothMap& map, const ExponentOptions& options) {
  const auto& grid = options.d_grid;
  if (grid.size() < 4) throw PreconditionError("exponent fit needs at least 4 values of d");
  for (double d : grid) {
    if (!(d > 0.0 && d < 1.0)) throw PreconditionError("d values must lie in (0, 1)");
  }
  if (options.trials < 1) throw PreconditionError("need at least one trial");
  if (!map.probe) throw PreconditionError(map.name + " has no probe start");

  const std::size_t trials = static_cast<std::size_t>(options.trials);
  ExponentEstimate est;
  est.cells.resize(grid.size() * trials);

  parallel_for(est.cells.size(), options.jobs, [&](std::size_t idx) {
    const std::size_t di = idx / trials;
    const std::size_t t = idx % trials;
    const double d = grid[di];
    Rng rng = make_stream(options.seed, t);
    const Vec start = map.probe(rng, d);
    const NoiseModel noise{options.noise, d, rng()};
    ExponentCell& cell = est.cells[idx];
    cell.d = d;
    cell.trial = static_cast<int>(t);
    cell.n = options.rule.window(d);
    const Pseudotrajectory traj = generate(map, start, cell.n, noise);
    try {
      const ShadowingResult r = options.solver == SolverKind::newton ? shadow_newton(map, traj)
                                                                     : shadow_optimal(map, traj);
      cell.epsilon = r.epsilon;
      cell.solver = r.solver;
      cell.status = r.status;
    } catch (const DivergenceError&) {
      cell.epsilon = std::numeric_limits<double>::infinity();
      cell.solver = to_string(options.solver);
      cell.status = ShadowStatus::failed;
    }
  });

  const double d_min = *std::min_element(grid.begin(), grid.end());
  const double d_cut = d_min * std::pow(10.0, options.fit_decades) * (1.0 + 1e-12);
  std::vector<double> lx;
  std::vector<double> ly;
  for (std::size_t di = 0; di < grid.size(); ++di) {
    ExponentRow row;
    row.d = grid[di];
    for (std::size_t t = 0; t < trials; ++t) {
      const ExponentCell& c = est.cells[di * trials + t];
      row.n = c.n;
      if (c.status == ShadowStatus::failed || !std::isfinite(c.epsilon)) {
        ++row.failures;
        continue;
      }
      row.worst_epsilon = std::max(row.worst_epsilon, c.epsilon);
    }
    est.excluded += row.failures;
    row.in_fit = row.d <= d_cut && row.worst_epsilon > 0.0 && row.failures < options.trials;
    if (row.in_fit) {
      lx.push_back(std::log(row.d));
      ly.push_back(std::log(row.worst_epsilon));
    }
    est.rows.push_back(row);
  }
  est.n_cells = lx.size();
  if (lx.size() >= 2) {
    const LineFit fit = fit_line(lx, ly);
    est.theta_hat = fit.slope;
    est.std_error = fit.slope_stderr;
    est.intercept = fit.intercept;
  } else {
    est.theta_hat = std::numeric_limits<double>::quiet_NaN();
    est.std_error = std::numeric_limits<double>::quiet_NaN();
  }
  return est;
}

}  // namespace holsh::pseudo
