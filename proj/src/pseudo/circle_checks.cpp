#include "holsh/pseudo/circle_checks.hpp"

#include <algorithm>
#include <cmath>

#include "holsh/common/error.hpp"
#include "holsh/common/rng.hpp"
#include "holsh/pseudo/pseudotrajectory.hpp"

namespace holsh::pseudo {

namespace {

double sign_or_plus(double x) { return x < 0.0 ? -1.0 : 1.0; }

double draw_d(Rng& rng, const CircleSweepOptions& o) {
  return std::exp(uniform(rng, std::log(o.d_min), std::log(o.d_max)));
}

void check_options(const maps::CircleExample& ex, const CircleSweepOptions& o) {
  if (!(o.d_min > 0.0 && o.d_max >= o.d_min)) throw PreconditionError("invalid d range");
  // Past this the neighbourhood f^-1(U_u) plus a d-ball no longer fits in U_u.
  const double d1 = ex.delta() - ex.half_inverse(ex.delta());
  if (o.d_max >= d1) throw PreconditionError("d range must stay below the confinement threshold");
  if (o.runs < 1 || o.max_window < 1) throw PreconditionError("runs and window must be positive");
}

// Backward d-pseudotrajectory from y_end: y_{k-1} = f^-1(y_k + eta_k). With
// `adversarial` the push follows the current deviation from the exact backward
// orbit, otherwise it is uniform. Calls visit(k, y_k, x_k) for k = 0..n where
// k counts steps back from the end. Returns the measured max defect.
template <class Visit>
double backward_run(const maps::CircleExample& ex, Rng& rng, double d, double y_end, long n,
                    bool adversarial, Visit&& visit) {
  double y = y_end;
  double x = y_end;
  double defect = 0.0;
  visit(0L, y, x);
  for (long k = 1; k <= n; ++k) {
    const double eta = adversarial ? sign_or_plus(y - x) * kAdversarialFraction * d
                                   : uniform(rng, -kUniformFraction * d, kUniformFraction * d);
    const double prev = ex.lift_inverse(y + eta);
    defect = std::max(defect, std::abs(y - ex.lift(prev)));
    y = prev;
    x = ex.lift_inverse(x);
    visit(k, y, x);
  }
  return defect;
}

}  // namespace

long escape_steps(double d, double delta) {
  double z = 2.0 * std::cbrt(d);
  long steps = 0;
  while (z < delta) {
    z = z + z * z * z - d;
    ++steps;
  }
  return steps;
}

PropositionSweep sweep_backward_cube_root(const maps::CircleExample& ex, const CircleSweepOptions& o) {
  check_options(ex, o);
  PropositionSweep s;
  s.name = "backward-cube-root";
  for (long r = 0; r < o.runs; ++r) {
    Rng rng = make_stream(o.seed, static_cast<std::uint64_t>(r));
    const double d = draw_d(rng, o);
    const double bound = 2.0 * std::cbrt(d);
    const double y0 = uniform(rng, -ex.delta(), ex.delta());
    const long n = std::min(o.max_window, static_cast<long>(std::ceil(4.0 * std::pow(d, -2.0 / 3.0))));
    long bad = 0;
    long pts = 0;
    double worst = 0.0;
    const double defect = backward_run(ex, rng, d, y0, n, r % 2 == 1, [&](long, double y, double x) {
      const double dist = std::abs(y - x);
      worst = std::max(worst, dist / bound);
      bad += dist < bound ? 0 : 1;
      ++pts;
    });
    ++s.runs;
    if (defect >= d) continue;
    ++s.kept;
    s.violations += bad;
    s.checked_points += pts;
    s.worst_ratio = std::max(s.worst_ratio, worst);
  }
  return s;
}

PropositionSweep sweep_neutral_confinement(const maps::CircleExample& ex, const CircleSweepOptions& o) {
  check_options(ex, o);
  PropositionSweep s;
  s.name = "neutral-confinement";
  for (long r = 0; r < o.runs; ++r) {
    Rng rng = make_stream(o.seed ^ 0x9e3779b97f4a7c15ULL, static_cast<std::uint64_t>(r));
    const double d = draw_d(rng, o);
    const double c = std::cbrt(d);
    const double bound = 2.0 * c;
    const long m = escape_steps(d, ex.delta());
    const long n = m + std::min(o.max_window, static_cast<long>(std::ceil(2.0 * std::pow(d, -2.0 / 3.0))));
    // Policies: uniform noise; hovering just below the balance radius of the
    // cubic drift; and a constant outward push, which normally escapes.
    const int policy = static_cast<int>(r % 3);
    const double hover = std::cbrt(0.95 * d);
    double y = uniform(rng, -c, c);
    bool inside = std::abs(y) < ex.delta();
    long bad = 0;
    long pts = 0;
    double worst = 0.0;
    for (long k = 0; k <= n && inside; ++k) {
      if (k <= n - m) {
        const double dist = std::abs(y);
        worst = std::max(worst, dist / bound);
        bad += dist < bound ? 0 : 1;
        ++pts;
      }
      if (k == n) break;
      const double fy = ex.lift(y);
      double eta = 0.0;
      if (policy == 0) {
        eta = uniform(rng, -kUniformFraction * d, kUniformFraction * d);
      } else if (policy == 1) {
        eta = (std::abs(fy) < hover ? 1.0 : -1.1) * sign_or_plus(fy) * kAdversarialFraction * d;
      } else {
        eta = sign_or_plus(fy) * kAdversarialFraction * d;
      }
      y = fy + eta;
      inside = std::abs(y) < ex.delta();
    }
    ++s.runs;
    if (!inside) continue;
    ++s.kept;
    s.violations += bad;
    s.checked_points += pts;
    s.worst_ratio = std::max(s.worst_ratio, worst);
  }
  return s;
}

PropositionSweep sweep_backward_linear(const maps::CircleExample& ex, const CircleSweepOptions& o) {
  check_options(ex, o);
  PropositionSweep s;
  s.name = "backward-linear";
  for (long r = 0; r < o.runs; ++r) {
    Rng rng = make_stream(o.seed ^ 0xbf58476d1ce4e5b9ULL, static_cast<std::uint64_t>(r));
    const double d = draw_d(rng, o);
    const double yn = uniform(rng, -ex.delta(), ex.delta());
    const long n = std::min(o.max_window, static_cast<long>(std::ceil(1.0 / std::sqrt(d))));
    long bad = 0;
    long pts = 0;
    double worst = 0.0;
    const double defect = backward_run(ex, rng, d, yn, n, r % 2 == 1, [&](long k, double y, double x) {
      const double dist = std::abs(y - x);
      const double bound = d * static_cast<double>(k);
      if (k > 0) worst = std::max(worst, dist / bound);
      bad += dist <= bound ? 0 : 1;
      ++pts;
    });
    ++s.runs;
    if (defect >= d) continue;
    ++s.kept;
    s.violations += bad;
    s.checked_points += pts;
    s.worst_ratio = std::max(s.worst_ratio, worst);
  }
  return s;
}

std::array<PropositionSweep, 3> circle_proposition_sweeps(const maps::CircleExample& ex,
                                                          const CircleSweepOptions& o) {
  return {sweep_backward_cube_root(ex, o), sweep_neutral_confinement(ex, o),
          sweep_backward_linear(ex, o)};
}

}  // namespace holsh::pseudo
