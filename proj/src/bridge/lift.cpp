#include "holsh/bridge/lift.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "holsh/common/error.hpp"

namespace holsh::bridge {

LiftedPseudo lift_solution_to_pseudo(const maps::SmoothMap& map, const Vec& p0,
                                     const std::vector<Eigen::VectorXd>& v, double d, double S) {
  if (v.empty()) throw PreconditionError("lift needs at least one displacement");
  if (!(d > 0.0)) throw PreconditionError("lift scale d must be positive");
  double vmax = 0.0;
  for (const auto& x : v) {
    if (x.size() != map.dim()) throw PreconditionError("displacement has the wrong dimension");
    vmax = std::max(vmax, x.norm());
  }
  const double reach = d * vmax;
  if (!(reach < map.space.injectivity_radius()))
    throw PreconditionError("d max|v| reaches the injectivity radius");
  if (!(reach * reach < d)) throw PreconditionError("(d max|v|)^2 must stay below d");

  LiftedPseudo out;
  out.v = v;
  out.d = d;
  out.S = S < 0.0 ? map.c2_bound : S;
  out.pseudo.d = d;
  out.pseudo.space = map.space;

  Vec p = map.space.wrap(p0);
  for (std::size_t k = 0; k < v.size(); ++k) {
    out.base.push_back(p);
    out.pseudo.points.push_back(map.space.exp(p, Vec(d * v[k])));
    if (k + 1 < v.size()) {
      const Eigen::VectorXd image = map.derivative(p) * v[k];
      out.max_forcing = std::max(out.max_forcing, (v[k + 1] - image).norm());
      p = map.eval(p);
    }
  }
  const auto& y = out.pseudo.points;
  for (std::size_t k = 0; k + 1 < y.size(); ++k)
    out.defect = std::max(out.defect, map.space.dist(map.eval(y[k]), y[k + 1]));
  // Allowance for rounding in the coordinates of the points themselves.
  double scale = 1.0;
  for (const auto& q : y) scale = std::max(scale, q.cwiseAbs().maxCoeff());
  out.defect_bound = (out.S + 1.0 + std::max(1.0, out.max_forcing)) * d +
                     64.0 * std::numeric_limits<double>::epsilon() * scale;
  return out;
}

}  // namespace holsh::bridge
