#include "holsh/pseudo/pseudotrajectory.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "holsh/common/error.hpp"

namespace holsh::pseudo {

namespace {

Vec random_unit(Rng& rng, int dim) {
  for (;;) {
    Vec v(dim);
    for (int i = 0; i < dim; ++i) v[i] = standard_normal(rng);
    const double n = v.norm();
    if (n > 1e-12) return v / n;
  }
}

Vec random_in_ball(Rng& rng, int dim, double radius) {
  const Vec u = random_unit(rng, dim);
  return u * (radius * std::pow(uniform01(rng), 1.0 / dim));
}

Vec outward_push(const maps::SmoothMap& map, const Vec& fy, Rng& rng, double size) {
  const Vec* nearest = nullptr;
  double best = 0.0;
  for (const Vec& a : map.attractors) {
    const double dist = map.space.dist(fy, a);
    if (nearest == nullptr || dist < best) {
      nearest = &a;
      best = dist;
    }
  }
  if (nearest == nullptr || best == 0.0) return random_unit(rng, map.dim()) * size;
  return map.space.log(fy, *nearest) * (-size / best);
}

}  // namespace

Pseudotrajectory generate(const maps::SmoothMap& map, const Vec& start, long n,
                          const NoiseModel& noise) {
  if (n < 1) throw PreconditionError("pseudotrajectory needs n >= 1");
  if (noise.kind != NoiseKind::none && !(noise.d > 0.0)) {
    throw PreconditionError("noise level must be positive");
  }
  Rng rng(splitmix64(noise.seed));
  Pseudotrajectory traj;
  traj.d = noise.d;
  traj.space = map.space;
  traj.points.reserve(static_cast<std::size_t>(n) + 1);
  traj.points.push_back(map.space.wrap(start));
  for (long k = 0; k < n; ++k) {
    const Vec fy = map.eval(traj.points.back());
    switch (noise.kind) {
      case NoiseKind::none:
        traj.points.push_back(fy);
        break;
      case NoiseKind::uniform_ball:
        traj.points.push_back(
            map.space.exp(fy, random_in_ball(rng, map.dim(), kUniformFraction * noise.d)));
        break;
      case NoiseKind::adversarial_outward:
        traj.points.push_back(
            map.space.exp(fy, outward_push(map, fy, rng, kAdversarialFraction * noise.d)));
        break;
    }
  }
  return traj;
}

Validation validate(const maps::SmoothMap& map, const Pseudotrajectory& traj, double d) {
  Validation v;
  for (std::size_t k = 0; k + 1 < traj.points.size(); ++k) {
    v.max_defect = std::max(v.max_defect, map.space.dist(traj.points[k + 1], map.eval(traj.points[k])));
  }
  v.ok = v.max_defect < d;
  return v;
}

NoiseKind parse_noise_kind(const std::string& text) {
  if (text == "none") return NoiseKind::none;
  if (text == "uniform" || text == "uniform-ball") return NoiseKind::uniform_ball;
  if (text == "adversarial" || text == "adversarial-outward") return NoiseKind::adversarial_outward;
  throw PreconditionError("unknown noise kind: " + text);
}

const char* to_string(NoiseKind kind) noexcept {
  switch (kind) {
    case NoiseKind::none: return "none";
    case NoiseKind::uniform_ball: return "uniform-ball";
    case NoiseKind::adversarial_outward: return "adversarial-outward";
  }
  return "?";
}

}  // namespace holsh::pseudo
