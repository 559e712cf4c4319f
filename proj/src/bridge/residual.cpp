#include "holsh/bridge/residual.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "holsh/cocycle/cocycle.hpp"
#include "holsh/common/error.hpp"

namespace holsh::bridge {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void require_orbit(const maps::SmoothMap& map, const std::vector<maps::Vec>& x, const char* what) {
  for (std::size_t k = 0; k + 1 < x.size(); ++k) {
    const maps::Vec fx = map.eval(x[k]);
    const double tol = 64.0 * kEps * (1.0 + fx.cwiseAbs().maxCoeff());
    if (map.space.dist(fx, x[k + 1]) > tol)
      throw PreconditionError(std::string(what) + " is not an orbit at index " + std::to_string(k));
  }
}

}  // namespace

std::vector<maps::Vec> orbit(const maps::SmoothMap& map, const maps::Vec& x0, long n) {
  std::vector<maps::Vec> out;
  if (n <= 0) return out;
  out.reserve(static_cast<std::size_t>(n));
  out.push_back(map.space.wrap(x0));
  for (long k = 1; k < n; ++k) out.push_back(map.eval(out.back()));
  return out;
}

ResidualTrace shadow_to_cocycle_residual(const maps::SmoothMap& map, const std::vector<maps::Vec>& base,
                                         const std::vector<maps::Vec>& shadow, double S) {
  if (base.size() != shadow.size()) throw PreconditionError("base and shadow orbits differ in length");
  require_orbit(map, base, "base sequence");
  require_orbit(map, shadow, "shadow sequence");

  ResidualTrace r;
  r.S = S < 0.0 ? map.c2_bound : S;
  const double radius = map.space.injectivity_radius();
  for (std::size_t k = 0; k < base.size(); ++k) {
    if (!(map.space.dist(base[k], shadow[k]) < radius))
      throw ChartDomainError("shadow point " + std::to_string(k) + " is outside the chart at the base point");
    r.c.emplace_back(map.space.log(base[k], shadow[k]));
  }
  for (std::size_t k = 0; k + 1 < base.size(); ++k) {
    const Eigen::MatrixXd a = map.derivative(base[k]);
    const Eigen::VectorXd t = r.c[k + 1] - a * r.c[k];
    const double scale = 1.0 + std::max(base[k].cwiseAbs().maxCoeff(), base[k + 1].cwiseAbs().maxCoeff());
    const double allowance = 64.0 * kEps * (1.0 + cocycle::operator_norm(a)) * scale;
    const double bound = 2.0 * r.S * r.c[k].squaredNorm() + allowance;
    r.max_residual = std::max(r.max_residual, t.norm());
    r.worst_ratio = std::max(r.worst_ratio, t.norm() / bound);
    r.t.push_back(t);
  }
  return r;
}

}  // namespace holsh::bridge
