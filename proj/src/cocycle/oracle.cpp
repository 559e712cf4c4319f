#include "holsh/cocycle/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "holsh/common/error.hpp"

namespace holsh::cocycle {

namespace {

constexpr int kGrid = 40;

// Minimises the convex function f over [center - radius, center + radius] by
// repeated grid scans, returning the smallest value seen.
template <class F>
double zoom_min(F&& f, double center, double radius, double resolution) {
  double best_x = center;
  double best_f = f(center);
  for (int level = 0; level < 200 && radius > resolution; ++level) {
    const double h = 2.0 * radius / kGrid;
    for (int j = 0; j <= kGrid; ++j) {
      const double x = center - radius + j * h;
      const double fx = f(x);
      if (fx < best_f) {
        best_f = fx;
        best_x = x;
      }
    }
    // The minimiser of a convex function lies within one cell of the best
    // grid point; keep two for rounding slack.
    center = best_x;
    radius = 2.0 * h;
    if (radius < 4.0 * std::numeric_limits<double>::epsilon() * std::abs(center)) break;
  }
  return best_f;
}

}  // namespace

double brute_force_F_oracle(const InhomogeneousProblem& problem, double resolution) {
  problem.validate();
  const int m = problem.cocycle->dim();
  if (m > 2 || problem.N > 12) throw PreconditionError("oracle supports m <= 2 and N <= 12");
  // Fixed-size copies keep the innermost loop free of allocations.
  std::vector<Eigen::Matrix2d> a(static_cast<std::size_t>(problem.N), Eigen::Matrix2d::Zero());
  std::vector<Eigen::Vector2d> w(static_cast<std::size_t>(problem.N), Eigen::Vector2d::Zero());
  for (long j = 0; j < problem.N; ++j) {
    a[j].topLeftCorner(m, m) = problem.cocycle->A(problem.i + j);
    w[j].head(m) = problem.w[j];
  }
  auto sup_norm = [&](double x1, double x2) {
    Eigen::Vector2d v(x1, x2);
    double worst = v.squaredNorm();
    for (long j = 0; j < problem.N; ++j) {
      v = a[j] * v + w[j];
      worst = std::max(worst, v.squaredNorm());
    }
    return std::sqrt(worst);
  };
  const double box = sup_norm(0.0, 0.0);
  if (box == 0.0) return 0.0;
  const double res = resolution;
  if (m == 1) return zoom_min([&](double x) { return sup_norm(x, 0.0); }, 0.0, box, res);
  auto inner = [&](double x1) {
    return zoom_min([&](double x2) { return sup_norm(x1, x2); }, 0.0, box, res);
  };
  return zoom_min(inner, 0.0, box, res);
}

}  // namespace holsh::cocycle
