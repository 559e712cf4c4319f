#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

namespace holsh {

using SmallVec = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, 3, 1>;
using SmallMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, 3, 3>;

/// Minimum-norm solution of the orbit-linearization system
///   delta_{k+1} - A_k delta_k = -g_k,   k = 0..n-1,
/// over delta_0..delta_n. The normal matrix J J^T is symmetric positive
/// definite and block tridiagonal, so a block Cholesky sweep solves it in O(n).
std::vector<SmallVec> min_norm_orbit_correction(std::span<const SmallMat> a,
                                                std::span<const SmallVec> g);

}  // namespace holsh
