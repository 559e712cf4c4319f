#pragma once

#include <vector>

#include <Eigen/Dense>

#include "holsh/maps/smooth_map.hpp"

namespace holsh::bridge {

/// c_k = log_{p_k}(x_k) and t_k = c_{k+1} - Df(p_k) c_k.
struct ResidualTrace {
  std::vector<Eigen::VectorXd> c;
  std::vector<Eigen::VectorXd> t;
  double S = 0.0;
  double max_residual = 0.0;
  /// max_k |t_k| / (2 S |c_k|^2 + rounding allowance).
  double worst_ratio = 0.0;

  bool bound_holds() const noexcept { return worst_ratio <= 1.0; }
};

/// Both sequences must be exact orbits of the same length. S < 0 takes the
/// map's c2_bound. Throws ChartDomainError when some dist(p_k, x_k) reaches
/// the injectivity radius and PreconditionError when either sequence is not
/// an orbit.
ResidualTrace shadow_to_cocycle_residual(const maps::SmoothMap& map, const std::vector<maps::Vec>& base,
                                         const std::vector<maps::Vec>& shadow, double S = -1.0);

/// The orbit x_0 .. x_{n-1} of x0.
std::vector<maps::Vec> orbit(const maps::SmoothMap& map, const maps::Vec& x0, long n);

}  // namespace holsh::bridge
