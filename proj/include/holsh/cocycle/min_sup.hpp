#pragma once

#include <limits>
#include <vector>

#include "holsh/cocycle/cocycle.hpp"

namespace holsh::cocycle {

/// v_{k+1} = A_k v_k + w_{k+1} for k in [i, i + N - 1]; w[j] holds w_{i+1+j}.
struct InhomogeneousProblem {
  const Cocycle* cocycle = nullptr;
  long i = 0;
  long N = 0;
  std::vector<VectorXd> w;
  double w_max = std::numeric_limits<double>::infinity();

  /// Throws WindowError or PreconditionError when the problem is malformed.
  void validate() const;
};

InhomogeneousProblem make_problem(const Cocycle& c, long i, std::vector<VectorXd> w);

/// The solution of least sup norm, v[j] = v_{i+j} for j in [0, N].
struct MinSupSolution {
  std::vector<VectorXd> v;
  double F = 0.0;
  VectorXd v0;
};

/// max_k |v_{k+1} - A_k v_k - w_{k+1}|.
double recursion_residual(const InhomogeneousProblem& p, const std::vector<VectorXd>& v);

/// max_k |v_k| for the solution started from v_i by forward recursion.
double sup_norm_from_initial(const InhomogeneousProblem& p, const VectorXd& vi);

/// Solver for one (cocycle, i, N) that can be reused across many forcings.
///
/// Solutions form an m-dimensional affine family. It is parameterised as
/// v = G w + Z y where G w is the minimum-norm solution and the columns of Z
/// are an orthonormal basis of the homogeneous solutions, both read off a
/// Householder QR of the stacked system matrix. This avoids the forward
/// recursion from v_i, which loses all accuracy on expanding cocycles.
class MinSupSolver {
 public:
  MinSupSolver(const Cocycle& c, long i, long N);

  int dim() const noexcept { return m_; }
  long length() const noexcept { return N_; }

  /// Stacked forcing (w_{i+1}, ..., w_{i+N}).
  VectorXd stack(const std::vector<VectorXd>& w) const;
  VectorXd particular(const VectorXd& w_stacked) const { return G_ * w_stacked; }
  const MatrixXd& G() const noexcept { return G_; }
  const MatrixXd& null_basis() const noexcept { return Z_; }

  struct Minimum {
    VectorXd y;
    double F = 0.0;
  };

  /// Minimises max_k |vp_k + Z_k y| over y.
  Minimum minimize(const VectorXd& vp) const;
  /// max_k |vp_k + Z_k y|.
  double objective(const VectorXd& vp, const VectorXd& y) const;

  MinSupSolution solve(const std::vector<VectorXd>& w) const;

 private:
  Minimum minimize_scalar(const VectorXd& vp) const;
  Minimum minimize_cone(const VectorXd& vp) const;

  int m_;
  long N_;
  MatrixXd G_;
  MatrixXd Z_;
};

/// F(i, N, {w}): the least sup norm over all solutions.
MinSupSolution solve_min_sup(const InhomogeneousProblem& problem);

}  // namespace holsh::cocycle
