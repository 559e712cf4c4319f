#pragma once

#include <vector>

#include <Eigen/Dense>

#include "holsh/maps/smooth_map.hpp"
#include "holsh/pseudo/pseudotrajectory.hpp"

namespace holsh::bridge {

using maps::Vec;

/// y_k = exp_{p_k}(d v_k) along the orbit p_k = f^k(p0).
struct LiftedPseudo {
  std::vector<Vec> base;
  std::vector<Eigen::VectorXd> v;
  double d = 0.0;
  double S = 0.0;
  pseudo::Pseudotrajectory pseudo;
  /// max_k |v_{k+1} - Df(p_k) v_k|.
  double max_forcing = 0.0;
  /// max_k dist(f(y_k), y_{k+1}).
  double defect = 0.0;
  /// (S + 1 + max(1, max_forcing)) d, which is (S + 2) d for unit forcing.
  double defect_bound = 0.0;

  bool within_bound() const noexcept { return defect <= defect_bound; }
};

/// S < 0 takes the map's c2_bound. Throws PreconditionError unless
/// d max|v| is below the injectivity radius and (d max|v|)^2 < d.
LiftedPseudo lift_solution_to_pseudo(const maps::SmoothMap& map, const Vec& p0,
                                     const std::vector<Eigen::VectorXd>& v, double d, double S = -1.0);

}  // namespace holsh::bridge
