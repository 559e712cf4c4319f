#include "holsh/maps/smooth_map.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "holsh/common/error.hpp"

namespace holsh::maps {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double rounding_allowance(const Vec& x, const Vec& fx, const Mat& a, const Vec& v) {
  const double scale = 1.0 + x.lpNorm<Eigen::Infinity>() + fx.lpNorm<Eigen::Infinity>() +
                       a.norm() * v.norm();
  return 64.0 * kEps * scale;
}

// Unit directions used to sample v: coordinate axes, diagonals, and a few
// irrational angles so that no direction family is favoured.
std::vector<Vec> sample_directions(int dim) {
  std::vector<Vec> out;
  if (dim == 1) {
    out.push_back(Vec::Constant(1, 1.0));
    out.push_back(Vec::Constant(1, -1.0));
    return out;
  }
  if (dim == 2) {
    for (int i = 0; i < 24; ++i) {
      const double t = 2.0 * std::numbers::pi * (i + 0.5 * std::numbers::sqrt2 - 0.7) / 24.0;
      Vec v(2);
      v << std::cos(t), std::sin(t);
      out.push_back(v);
    }
    return out;
  }
  for (int i = 0; i < 48; ++i) {
    // Fibonacci sphere.
    const double z = 1.0 - 2.0 * (i + 0.5) / 48.0;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = i * std::numbers::pi * (3.0 - std::sqrt(5.0));
    Vec v(3);
    v << r * std::cos(phi), r * std::sin(phi), z;
    out.push_back(v);
  }
  return out;
}

}  // namespace

double c2_defect(const SmoothMap& map, const Vec& x, const Vec& v) {
  const Vec fx = map.eval(x);
  const Vec lhs = map.eval(map.space.exp(x, v));
  const Vec rhs = map.space.exp(fx, map.derivative(x) * v);
  return map.space.dist(lhs, rhs);
}

double derivative_mismatch(const SmoothMap& map, const Vec& x, double h) {
  const Mat a = map.derivative(x);
  const int m = map.dim();
  Mat fd(m, m);
  for (int j = 0; j < m; ++j) {
    Vec e = Vec::Zero(m);
    e[j] = h;
    const Vec fp = map.eval(map.space.exp(x, e));
    const Vec fm = map.eval(map.space.exp(x, -e));
    fd.col(j) = map.space.log(fm, fp) / (2.0 * h);
  }
  const double scale = std::max(a.norm(), 1e-12);
  return (fd - a).norm() / scale;
}

double estimate_c2_bound(const SmoothMap& map, std::span<const Vec> region, double radius) {
  if (!(radius > 0.0) || radius > map.space.injectivity_radius()) {
    throw PreconditionError("c2 radius must lie in (0, injectivity radius]");
  }
  const auto dirs = sample_directions(map.dim());
  constexpr int kRadii = 8;
  double best = 0.0;
  for (const Vec& x : region) {
    const Vec fx = map.eval(x);
    const Mat a = map.derivative(x);
    for (const Vec& u : dirs) {
      for (int r = 0; r < kRadii; ++r) {
        const double len = radius * (1.0 / 8.0 + (1.0 - 1.0 / 8.0) * r / (kRadii - 1));
        const Vec v = len * u;
        const Vec lhs = map.eval(map.space.exp(x, v));
        const Vec rhs = map.space.exp(fx, a * v);
        const double defect = map.space.dist(lhs, rhs) - rounding_allowance(x, fx, a, v);
        if (defect > 0.0) best = std::max(best, defect / (len * len));
      }
    }
  }
  return best;
}

double calibrate_c2_bound(SmoothMap& map, std::span<const Vec> region, double radius) {
  map.c2_bound = 1.1 * estimate_c2_bound(map, region, radius);
  return map.c2_bound;
}

Vec iterate(const SmoothMap& map, Vec x, long k) {
  if (k < 0 && !map.has_inverse()) throw PreconditionError(map.name + " has no inverse");
  for (long i = 0; i < k; ++i) x = map.eval(x);
  for (long i = 0; i < -k; ++i) x = map.inverse(x);
  return x;
}

}  // namespace holsh::maps
