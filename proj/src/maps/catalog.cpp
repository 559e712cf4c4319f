#include "holsh/maps/catalog.hpp"

#include <cmath>

#include "holsh/common/error.hpp"

namespace holsh::maps {

namespace {

std::vector<Vec> grid_2d(double lo, double hi, int per_side) {
  std::vector<Vec> pts;
  for (int i = 0; i < per_side; ++i) {
    for (int j = 0; j < per_side; ++j) {
      Vec p(2);
      p << lo + (hi - lo) * (i + 0.5) / per_side, lo + (hi - lo) * (j + 0.5) / per_side;
      pts.push_back(p);
    }
  }
  return pts;
}

Vec uniform_box(Rng& rng, int dim, double lo, double hi) {
  Vec p(dim);
  for (int i = 0; i < dim; ++i) p[i] = uniform(rng, lo, hi);
  return p;
}

}  // namespace

SmoothMap make_cat_map() {
  SmoothMap m;
  m.name = "cat";
  m.space = Space::torus2();
  Mat a(2, 2);
  a << 2, 1, 1, 1;
  Mat ainv(2, 2);
  ainv << 1, -1, -1, 2;
  const Space sp = m.space;
  m.eval = [a, sp](const Vec& x) { return sp.wrap(a * x); };
  m.derivative = [a](const Vec&) { return a; };
  m.inverse = [ainv, sp](const Vec& x) { return sp.wrap(ainv * x); };
  m.probe = [](Rng& rng, double) { return uniform_box(rng, 2, 0.0, 1.0); };
  const auto region = grid_2d(0.0, 1.0, 12);
  calibrate_c2_bound(m, region, 0.05);
  return m;
}

SmoothMap make_contraction() {
  SmoothMap m;
  m.name = "contraction";
  m.space = Space::plane(2);
  m.eval = [](const Vec& x) -> Vec { return 0.5 * x; };
  m.derivative = [](const Vec&) -> Mat { return 0.5 * Mat::Identity(2, 2); };
  m.inverse = [](const Vec& x) -> Vec { return 2.0 * x; };
  m.attractors = {Vec::Zero(2)};
  m.probe = [](Rng& rng, double) { return uniform_box(rng, 2, -1.0, 1.0); };
  m.bounding_box = 1e3;
  const auto region = grid_2d(-1.0, 1.0, 12);
  calibrate_c2_bound(m, region, 0.05);
  return m;
}

SmoothMap make_identity(int dim) {
  SmoothMap m;
  m.name = "identity";
  m.space = Space::plane(dim);
  m.eval = [](const Vec& x) { return x; };
  m.derivative = [dim](const Vec&) -> Mat { return Mat::Identity(dim, dim); };
  m.inverse = [](const Vec& x) { return x; };
  m.probe = [dim](Rng& rng, double) { return uniform_box(rng, dim, -1.0, 1.0); };
  m.bounding_box = 1e3;
  m.c2_bound = 0.0;
  return m;
}

SmoothMap make_henon(double a, double b) {
  if (b == 0.0) throw ConstructionError("henon map needs b != 0");
  SmoothMap m;
  m.name = "henon";
  m.space = Space::plane(2);
  m.eval = [a, b](const Vec& x) {
    Vec y(2);
    y << 1.0 - a * x[0] * x[0] + x[1], b * x[0];
    return y;
  };
  m.derivative = [a, b](const Vec& x) {
    Mat j(2, 2);
    j << -2.0 * a * x[0], 1.0, b, 0.0;
    return j;
  };
  m.inverse = [a, b](const Vec& y) {
    Vec x(2);
    x[0] = y[1] / b;
    x[1] = y[0] - 1.0 + a * x[0] * x[0];
    return x;
  };
  m.bounding_box = 10.0;
  m.probe = [f = m.eval](Rng& rng, double) {
    Vec x = Vec::Zero(2);
    const int steps = 1000 + static_cast<int>(rng() % 1000);
    for (int i = 0; i < steps; ++i) x = f(x);
    return x;
  };
  // Sample the defect along a stretch of the attractor.
  std::vector<Vec> region;
  Vec x = Vec::Zero(2);
  for (int i = 0; i < 1200; ++i) {
    x = m.eval(x);
    if (i >= 1000) region.push_back(x);
  }
  calibrate_c2_bound(m, region, 0.01);
  return m;
}

std::vector<std::string> map_names() {
  return {"circle_example", "cat", "contraction", "identity", "henon"};
}

std::vector<SmoothMap> builtin_maps(const CatalogOptions& options) {
  std::vector<SmoothMap> out;
  for (const auto& name : map_names()) out.push_back(find_map(name, options));
  return out;
}

SmoothMap find_map(std::string_view name, const CatalogOptions& options) {
  if (name == "circle_example") return build_circle_example(options.circle);
  if (name == "cat") return make_cat_map();
  if (name == "contraction") return make_contraction();
  if (name == "identity") return make_identity(2);
  if (name == "henon") return make_henon(options.henon_a, options.henon_b);
  throw PreconditionError("unknown map: " + std::string(name));
}

}  // namespace holsh::maps
