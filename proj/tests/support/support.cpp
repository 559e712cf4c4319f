#include "support.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/SVD>

namespace holsh::testing {

maps::SmoothMap cubic_line_map() {
  maps::SmoothMap g;
  g.name = "cubic";
  g.space = maps::Space::plane(1);
  g.eval = [](const maps::Vec& x) {
    maps::Vec y(1);
    y(0) = x(0) + x(0) * x(0) * x(0);
    return y;
  };
  g.derivative = [](const maps::Vec& x) {
    maps::Mat a(1, 1);
    a(0, 0) = 1.0 + 3.0 * x(0) * x(0);
    return a;
  };
  std::vector<maps::Vec> region;
  for (int j = -50; j <= 50; ++j) region.push_back(maps::Vec::Constant(1, 0.1 * j / 50.0));
  g.c2_bound = maps::estimate_c2_bound(g, region, 0.002);
  return g;
}

double brute_force_shadow_1d(const maps::SmoothMap& map, const pseudo::Pseudotrajectory& traj,
                             double half_width, int cells, int zooms) {
  const auto objective = [&](double x0) {
    maps::Vec x = map.space.wrap(maps::Vec::Constant(1, x0));
    double worst = 0.0;
    for (const auto& y : traj.points) {
      worst = std::max(worst, map.space.dist(x, y));
      x = map.eval(x);
    }
    return worst;
  };
  double lo = traj.points.front()(0) - half_width;
  double hi = traj.points.front()(0) + half_width;
  double best = std::numeric_limits<double>::infinity();
  for (int z = 0; z < zooms; ++z) {
    const double step = (hi - lo) / cells;
    int arg = 0;
    for (int j = 0; j <= cells; ++j) {
      const double v = objective(lo + step * j);
      if (v < best) {
        best = v;
        arg = j;
      }
    }
    const double centre = lo + step * arg;
    lo = centre - 2 * step;
    hi = centre + 2 * step;
  }
  return best;
}

cocycle::MatrixXd random_matrix(Rng& rng, int m) {
  for (;;) {
    cocycle::MatrixXd a(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) a(i, j) = uniform(rng, -2.0, 2.0);
    Eigen::JacobiSVD<cocycle::MatrixXd> svd(a);
    if (svd.singularValues()(m - 1) >= 0.1) return a;
  }
}

cocycle::Cocycle random_cocycle(Rng& rng, int m, long k0, long length) {
  std::vector<cocycle::MatrixXd> mats;
  for (long k = 0; k < length; ++k) mats.push_back(random_matrix(rng, m));
  return cocycle::Cocycle(k0, std::move(mats));
}

std::vector<cocycle::VectorXd> random_forcing(Rng& rng, int m, long length) {
  std::vector<cocycle::VectorXd> w;
  for (long k = 0; k < length; ++k) {
    cocycle::VectorXd v(m);
    for (int j = 0; j < m; ++j) v(j) = uniform(rng, -1.0, 1.0);
    w.push_back(v);
  }
  return w;
}

}  // namespace holsh::testing
