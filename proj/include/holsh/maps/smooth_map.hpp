#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "holsh/common/rng.hpp"
#include "holsh/maps/space.hpp"

namespace holsh::maps {

/// A C^2 self-map of a flat space together with the data the shadowing and
/// cocycle code needs about it.
struct SmoothMap {
  std::string name;
  Space space = Space::circle();
  std::function<Vec(const Vec&)> eval;
  std::function<Mat(const Vec&)> derivative;
  /// Empty when the map has no usable inverse.
  std::function<Vec(const Vec&)> inverse;
  /// Constant S with dist(f(exp_x v), exp_{f(x)}(Df(x) v)) <= S |v|^2.
  double c2_bound = 0.0;

  /// Attracting fixed points, used to orient adversarial noise.
  std::vector<Vec> attractors;
  /// Start point for an experiment at defect level d.
  std::function<Vec(Rng&, double d)> probe;
  /// Plane maps only: orbits with a coordinate beyond this are divergent.
  double bounding_box = std::numeric_limits<double>::infinity();
  /// Degree-one monotone circle maps expose a lift F: R -> R with
  /// F(x + 1) = F(x) + 1. The 1-D shadowing solver relies on it.
  std::function<double(double)> lift1d;

  int dim() const noexcept { return space.dim(); }
  bool has_inverse() const noexcept { return static_cast<bool>(inverse); }
  Vec operator()(const Vec& x) const { return eval(x); }
};

/// One-point quadratic defect dist(f(exp_x v), exp_{f(x)}(Df(x) v)).
double c2_defect(const SmoothMap& map, const Vec& x, const Vec& v);

/// Largest relative error between derivative() and a central difference of
/// step h at x. Periodic coordinates are differenced through the chart.
double derivative_mismatch(const SmoothMap& map, const Vec& x, double h = 1e-6);

/// Smallest S making the quadratic defect inequality hold on a grid of
/// (x, v) with x in `region` and |v| between radius/8 and radius. A rounding
/// allowance is subtracted from each defect first, so affine maps give 0.
double estimate_c2_bound(const SmoothMap& map, std::span<const Vec> region, double radius);

/// Runs estimate_c2_bound and stores 1.1 times the result in map.c2_bound.
double calibrate_c2_bound(SmoothMap& map, std::span<const Vec> region, double radius);

/// Iterates the map k times from x (k >= 0) or the inverse -k times.
Vec iterate(const SmoothMap& map, Vec x, long k);

}  // namespace holsh::maps
