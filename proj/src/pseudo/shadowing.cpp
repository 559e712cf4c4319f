#include "holsh/pseudo/shadowing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "holsh/common/block_tridiagonal.hpp"
#include "holsh/common/error.hpp"

namespace holsh::pseudo {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool escaped(const maps::SmoothMap& map, const Vec& x) {
  if (map.space.periodic()) return false;
  return !x.allFinite() || x.lpNorm<Eigen::Infinity>() > map.bounding_box;
}

// max_k dist(f^k(x0), y_k); +inf once the orbit leaves the bounding box.
// Stops early when the running maximum already exceeds `cutoff`.
double sup_distance(const maps::SmoothMap& map, const Pseudotrajectory& traj, Vec x,
                    double cutoff = kInf) {
  double worst = 0.0;
  for (std::size_t k = 0; k < traj.points.size(); ++k) {
    if (escaped(map, x)) return kInf;
    worst = std::max(worst, map.space.dist(x, traj.points[k]));
    if (worst > cutoff) return worst;
    if (k + 1 < traj.points.size()) x = map.eval(x);
  }
  return worst;
}

ShadowingResult finish(const maps::SmoothMap& map, const Pseudotrajectory& traj, const Vec& x0,
                       const char* solver) {
  ShadowingResult r;
  r.x0 = map.space.wrap(x0);
  r.per_step = distance_profile(map, traj, r.x0);
  r.epsilon = *std::max_element(r.per_step.begin(), r.per_step.end());
  r.solver = solver;
  return r;
}

// ---- degree-one circle maps ---------------------------------------------

ShadowingResult shadow_lift(const maps::SmoothMap& map, const Pseudotrajectory& traj) {
  const auto& lift = map.lift1d;
  const std::size_t n = traj.points.size();
  std::vector<double> yl(n);
  yl[0] = traj.points[0][0];
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double fy = lift(yl[k]);
    yl[k + 1] = fy + maps::wrap_signed(traj.points[k + 1][0] - fy);
  }
  // Largest overshoot and undershoot of the lifted orbit from x0.
  auto spread = [&](double x0) {
    double up = -kInf;
    double down = -kInf;
    double x = x0;
    for (std::size_t k = 0; k < n; ++k) {
      const double e = x - yl[k];
      up = std::max(up, e);
      down = std::max(down, -e);
      x = lift(x);
    }
    return std::pair{up, down};
  };
  double lo = yl[0] - 0.5;
  double hi = yl[0] + 0.5;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const auto [up, down] = spread(mid);
    (up > down ? hi : lo) = mid;
  }
  const auto [ul, dl] = spread(lo);
  const auto [uh, dh] = spread(hi);
  const double best = std::max(ul, dl) <= std::max(uh, dh) ? lo : hi;
  return finish(map, traj, Vec::Constant(1, best), "optimal");
}

// ---- generic 1-D -----------------------------------------------------------

ShadowingResult shadow_scan(const maps::SmoothMap& map, const Pseudotrajectory& traj,
                            const OptimalOptions& options) {
  const Vec& y0 = traj.points[0];
  const double base = sup_distance(map, traj, y0);
  if (base == 0.0) return finish(map, traj, y0, "optimal");
  double radius = std::min(base, map.space.injectivity_radius());
  if (!std::isfinite(radius)) radius = map.bounding_box;

  auto objective = [&](double z) { return sup_distance(map, traj, map.space.exp(y0, Vec::Constant(1, z))); };

  const int m = std::max(options.scan_points, 16);
  std::vector<double> zs(m + 1);
  std::vector<double> vals(m + 1);
  for (int i = 0; i <= m; ++i) {
    zs[i] = -radius + 2.0 * radius * i / m;
    vals[i] = objective(zs[i]);
  }
  std::vector<int> minima;
  for (int i = 0; i <= m; ++i) {
    const bool left = i == 0 || vals[i] <= vals[i - 1];
    const bool right = i == m || vals[i] <= vals[i + 1];
    if (left && right && std::isfinite(vals[i])) minima.push_back(i);
  }
  if (minima.empty()) {
    if (!std::isfinite(base)) throw DivergenceError("every candidate orbit left the bounding box");
    return finish(map, traj, y0, "optimal");
  }
  std::sort(minima.begin(), minima.end(), [&](int a, int b) { return vals[a] < vals[b]; });
  if (minima.size() > 8) minima.resize(8);

  double best_z = zs[minima.front()];
  double best_v = vals[minima.front()];
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int i : minima) {
    double a = zs[std::max(i - 1, 0)];
    double b = zs[std::min(i + 1, m)];
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = objective(c);
    double fd = objective(d);
    for (int it = 0; it < 200 && b - a > 1e-16 * (1.0 + std::abs(a)); ++it) {
      if (fc <= fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - invphi * (b - a);
        fc = objective(c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + invphi * (b - a);
        fd = objective(d);
      }
    }
    for (double z : {a, b, c, d}) {
      const double v = objective(z);
      if (v < best_v) {
        best_v = v;
        best_z = z;
      }
    }
  }
  return finish(map, traj, map.space.exp(y0, Vec::Constant(1, best_z)), "optimal");
}

// ---- multistart Nelder-Mead --------------------------------------------

struct Simplex {
  std::vector<Vec> pts;
  std::vector<double> vals;
};

template <class F>
void nelder_mead(F&& f, Simplex& s, int max_evals) {
  const int m = static_cast<int>(s.pts.size()) - 1;
  std::vector<int> order(m + 1);
  int evals = 0;
  while (evals < max_evals) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return s.vals[a] < s.vals[b]; });
    const int best = order.front();
    const int worst = order.back();
    const int second = order[m - 1];
    double diam = 0.0;
    for (int i = 0; i <= m; ++i) diam = std::max(diam, (s.pts[i] - s.pts[best]).norm());
    const double spread = s.vals[worst] - s.vals[best];
    if (diam <= 1e-15 * (1.0 + s.pts[best].norm()) ||
        (std::isfinite(spread) && spread <= 1e-15 * s.vals[best] && diam <= 1e-10)) {
      break;
    }
    Vec centroid = Vec::Zero(s.pts[0].size());
    for (int i = 0; i <= m; ++i) {
      if (i != worst) centroid += s.pts[i];
    }
    centroid /= m;
    const Vec xr = centroid + (centroid - s.pts[worst]);
    const double fr = f(xr);
    ++evals;
    if (fr < s.vals[best]) {
      const Vec xe = centroid + 2.0 * (centroid - s.pts[worst]);
      const double fe = f(xe);
      ++evals;
      if (fe < fr) {
        s.pts[worst] = xe;
        s.vals[worst] = fe;
      } else {
        s.pts[worst] = xr;
        s.vals[worst] = fr;
      }
      continue;
    }
    if (fr < s.vals[second]) {
      s.pts[worst] = xr;
      s.vals[worst] = fr;
      continue;
    }
    const bool outside = fr < s.vals[worst];
    const Vec xc = outside ? Vec(centroid + 0.5 * (xr - centroid))
                           : Vec(centroid + 0.5 * (s.pts[worst] - centroid));
    const double fc = f(xc);
    ++evals;
    if (fc < (outside ? fr : s.vals[worst])) {
      s.pts[worst] = xc;
      s.vals[worst] = fc;
      continue;
    }
    for (int i = 0; i <= m; ++i) {
      if (i == best) continue;
      s.pts[i] = s.pts[best] + 0.5 * (s.pts[i] - s.pts[best]);
      s.vals[i] = f(s.pts[i]);
      ++evals;
    }
  }
}

ShadowingResult shadow_multistart(const maps::SmoothMap& map, const Pseudotrajectory& traj,
                                  const OptimalOptions& options) {
  const Vec& y0 = traj.points[0];
  const int m = map.dim();
  const double base = sup_distance(map, traj, y0);
  if (base == 0.0) return finish(map, traj, y0, "optimal");
  double radius = std::min(base, map.space.injectivity_radius());
  if (!std::isfinite(radius)) radius = 1.0;

  auto objective = [&](const Vec& z) { return sup_distance(map, traj, map.space.exp(y0, z)); };

  Rng rng(splitmix64(options.seed));
  Vec best_z = Vec::Zero(m);
  double best_v = base;
  const int starts = std::max(options.starts, 1);
  for (int s = 0; s < starts; ++s) {
    Vec z0 = Vec::Zero(m);
    if (s > 0) {
      Vec dir(m);
      for (int i = 0; i < m; ++i) dir[i] = standard_normal(rng);
      z0 = dir.normalized() * (radius * std::pow(uniform01(rng), 1.0 / m));
    }
    // Two passes: the second restarts from the first pass's best vertex,
    // which unsticks simplices that collapsed onto a ridge of the max.
    double step = 0.25 * radius;
    for (int pass = 0; pass < 2; ++pass) {
      Simplex sx;
      sx.pts.push_back(z0);
      for (int i = 0; i < m; ++i) {
        Vec p = z0;
        p[i] += step;
        sx.pts.push_back(p);
      }
      for (const Vec& p : sx.pts) sx.vals.push_back(objective(p));
      nelder_mead(objective, sx, 400 * m);
      const auto it = std::min_element(sx.vals.begin(), sx.vals.end());
      z0 = sx.pts[it - sx.vals.begin()];
      if (*it < best_v) {
        best_v = *it;
        best_z = z0;
      }
      step = std::max(0.05 * std::max(*it, 1e-300), 1e-300);
      if (!std::isfinite(step)) step = 0.25 * radius;
    }
  }
  if (!std::isfinite(best_v)) throw DivergenceError("every candidate orbit left the bounding box");
  return finish(map, traj, map.space.exp(y0, best_z), "optimal");
}

}  // namespace

const char* to_string(ShadowStatus status) noexcept {
  switch (status) {
    case ShadowStatus::ok: return "ok";
    case ShadowStatus::fallback: return "fallback";
    case ShadowStatus::failed: return "failed";
  }
  return "?";
}

std::vector<double> distance_profile(const maps::SmoothMap& map, const Pseudotrajectory& traj,
                                     const Vec& x0) {
  std::vector<double> out;
  out.reserve(traj.points.size());
  Vec x = x0;
  for (std::size_t k = 0; k < traj.points.size(); ++k) {
    out.push_back(escaped(map, x) ? kInf : map.space.dist(x, traj.points[k]));
    if (k + 1 < traj.points.size()) x = map.eval(x);
  }
  return out;
}

ShadowingResult shadow_optimal(const maps::SmoothMap& map, const Pseudotrajectory& traj,
                               const OptimalOptions& options) {
  if (traj.points.empty()) throw PreconditionError("empty pseudotrajectory");
  if (map.dim() == 1 && map.lift1d) return shadow_lift(map, traj);
  if (map.dim() == 1) return shadow_scan(map, traj, options);
  return shadow_multistart(map, traj, options);
}

ShadowingResult shadow_newton(const maps::SmoothMap& map, const Pseudotrajectory& traj,
                              const NewtonOptions& options) {
  if (traj.points.empty()) throw PreconditionError("empty pseudotrajectory");
  const std::size_t n = traj.points.size();
  std::vector<Vec> z = traj.points;
  std::vector<SmallMat> a(n - 1);
  std::vector<SmallVec> g(n - 1);

  // Returns the largest one-step defect; `energy` receives the sum of the
  // squared defects, which is the merit function of the line search.
  auto residual = [&](const std::vector<Vec>& pts, bool fill, double& energy) {
    double worst = 0.0;
    energy = 0.0;
    for (std::size_t k = 0; k + 1 < n; ++k) {
      if (escaped(map, pts[k])) return kInf;
      const Vec fz = map.eval(pts[k]);
      const Vec gk = map.space.log(fz, pts[k + 1]);
      if (fill) {
        g[k] = gk;
        a[k] = map.derivative(pts[k]);
      }
      worst = std::max(worst, gk.norm());
      energy += gk.squaredNorm();
    }
    return std::isfinite(worst) && std::isfinite(energy) ? worst : kInf;
  };

  ShadowingResult r;
  r.solver = "newton";
  double energy = 0.0;
  double res = residual(z, true, energy);
  bool converged = res < options.tolerance;
  int it = 0;
  while (!converged && it < options.max_iterations) {
    ++it;
    std::vector<SmallVec> delta;
    try {
      delta = min_norm_orbit_correction(a, g);
    } catch (const Error&) {
      break;
    }
    bool accepted = false;
    double t = 1.0;
    std::vector<Vec> trial(n);
    for (int halving = 0; halving < 40; ++halving, t *= 0.5) {
      for (std::size_t k = 0; k < n; ++k) trial[k] = map.space.exp(z[k], t * delta[k]);
      double trial_energy = 0.0;
      const double tr = residual(trial, false, trial_energy);
      if (std::isfinite(tr) && trial_energy < energy) {
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
    z.swap(trial);
    res = residual(z, true, energy);
    converged = res < options.tolerance;
  }
  r.iterations = it;
  r.residual = res;

  if (!converged) {
    if (options.fallback && traj.length() <= options.fallback_max_length) {
      try {
        ShadowingResult fb = shadow_optimal(map, traj);
        fb.status = ShadowStatus::fallback;
        fb.iterations = it;
        fb.residual = res;
        return fb;
      } catch (const Error&) {
      }
    }
    r.status = ShadowStatus::failed;
    r.x0 = z[0];
    r.epsilon = kInf;
    return r;
  }

  r.x0 = z[0];
  r.per_step.resize(n);
  for (std::size_t k = 0; k < n; ++k) r.per_step[k] = map.space.dist(z[k], traj.points[k]);
  r.epsilon = *std::max_element(r.per_step.begin(), r.per_step.end());
  return r;
}

}  // namespace holsh::pseudo
