#include "holsh/common/block_tridiagonal.hpp"

#include "holsh/common/error.hpp"

namespace holsh {

std::vector<SmallVec> min_norm_orbit_correction(std::span<const SmallMat> a,
                                                std::span<const SmallVec> g) {
  const std::size_t n = a.size();
  if (n == 0 || g.size() != n) throw PreconditionError("orbit correction needs n >= 1 blocks");
  const Eigen::Index m = a[0].rows();

  std::vector<Eigen::LLT<SmallMat>> pivots;
  pivots.reserve(n);
  std::vector<SmallVec> rhs(n);

  SmallMat ident = SmallMat::Identity(m, m);
  for (std::size_t k = 0; k < n; ++k) {
    SmallMat block = a[k] * a[k].transpose() + ident;
    rhs[k] = g[k];
    if (k > 0) {
      block -= a[k] * pivots[k - 1].solve(a[k].transpose());
      rhs[k] += a[k] * pivots[k - 1].solve(rhs[k - 1]);
    }
    pivots.emplace_back(block);
    if (pivots.back().info() != Eigen::Success) {
      throw SingularError("orbit normal matrix lost positive definiteness");
    }
  }

  std::vector<SmallVec> lambda(n);
  lambda[n - 1] = pivots[n - 1].solve(rhs[n - 1]);
  for (std::size_t k = n - 1; k-- > 0;) {
    lambda[k] = pivots[k].solve(SmallVec(rhs[k] + a[k + 1].transpose() * lambda[k + 1]));
  }

  std::vector<SmallVec> delta(n + 1, SmallVec::Zero(m));
  for (std::size_t k = 0; k < n; ++k) {
    delta[k] += a[k].transpose() * lambda[k];
    delta[k + 1] -= lambda[k];
  }
  return delta;
}

}  // namespace holsh
