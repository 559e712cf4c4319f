#pragma once

#include <vector>

#include "holsh/cocycle/cocycle.hpp"
#include "holsh/dichotomy/splitting.hpp"

namespace holsh::dichotomy {

/// Splitting of a cocycle along a transported direction e_k. With U_k an
/// orthonormal basis of the complement S_k of e_k,
///   A_k e_k = λ_k e_{k+1},  A_k U_k = e_{k+1} D_k + U_{k+1} B_k,
/// so that writing v_k = α_k e_k + U_k β_k the recursion v_{k+1} = A_k v_k + w
/// becomes β_{k+1} = B_k β_k + U_{k+1}^T w and
/// α_{k+1} = λ_k α_k + D_k β_k + e_{k+1}^T w.
struct Reduction {
  long k0 = 0;
  cocycle::DirectionSequence directions;
  std::vector<MatrixXd> complement;  // U_k, fibres k0 .. k1 + 1
  std::vector<MatrixXd> B;           // (m-1)x(m-1), k0 .. k1
  std::vector<MatrixXd> D;           // 1x(m-1), k0 .. k1

  const MatrixXd& U_at(long k) const { return complement.at(static_cast<std::size_t>(k - k0)); }
  const MatrixXd& B_at(long k) const { return B.at(static_cast<std::size_t>(k - k0)); }
  const MatrixXd& D_at(long k) const { return D.at(static_cast<std::size_t>(k - k0)); }
  long k1() const noexcept { return k0 + static_cast<long>(B.size()) - 1; }

  /// The reduced (m-1)-dimensional cocycle {B_k}.
  Cocycle reduced(double R = 0.0) const;
  /// max over k of max(‖B_k‖, ‖B_k^-1‖, ‖D_k‖).
  double norm_sup() const;
};

/// e0 is a unit vector at fibre k0. Requires m >= 2.
Reduction reduce(const Cocycle& c, const VectorXd& e0);

/// Runs the full recursion and the split recursion from v0 with forcing
/// w[j] = w_{k0+1+j} and returns the largest disagreement between them.
double split_recursion_residual(const Cocycle& c, const Reduction& r, const VectorXd& v0,
                                const std::vector<VectorXd>& w);

}  // namespace holsh::dichotomy
