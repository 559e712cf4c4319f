#pragma once

#include <vector>

#include <Eigen/Dense>

#include "holsh/maps/smooth_map.hpp"

namespace holsh::cocycle {

using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Invertible matrices A_k : R^m -> R^m for k in [k0, k1]. The fibres run
/// over [k0, k1 + 1]. R bounds every ‖A_k‖ and ‖A_k^-1‖ strictly.
class Cocycle {
 public:
  /// When R <= 0 it is set to 1.1 times the sampled sup of the two norms.
  /// Throws SingularError if some A_k has condition number above 1e12.
  Cocycle(long k0, std::vector<MatrixXd> matrices, double R = 0.0);

  static Cocycle constant(const MatrixXd& a, long k0, long k1, double R = 0.0);
  static Cocycle scalar(std::vector<double> lambdas, long k0, double R = 0.0);

  int dim() const noexcept { return dim_; }
  long k0() const noexcept { return k0_; }
  long k1() const noexcept { return k0_ + static_cast<long>(mats_.size()) - 1; }
  long size() const noexcept { return static_cast<long>(mats_.size()); }
  double R() const noexcept { return R_; }

  /// A_k; throws WindowError outside [k0, k1].
  const MatrixXd& A(long k) const;
  const MatrixXd& A_inverse(long k) const;
  const std::vector<MatrixXd>& matrices() const noexcept { return mats_; }

  /// max over k of max(‖A_k‖, ‖A_k^-1‖).
  double sampled_norm_sup() const;
  bool satisfies_bound() const;

  /// Sub-window [a, b] of the matrices, keeping indices and R.
  Cocycle slice(long a, long b) const;

 private:
  int dim_ = 0;
  long k0_ = 0;
  std::vector<MatrixXd> mats_;
  std::vector<MatrixXd> inverses_;
  double R_ = 0.0;
};

double operator_norm(const MatrixXd& a);

/// A_k = Df(p_k) along the orbit p_k = f^k(p0), k in [k0, k1].
Cocycle from_orbit(const maps::SmoothMap& map, const maps::Vec& p0, long k0, long k1);

/// A_{k+l-1} ... A_k; the identity for l = 0.
MatrixXd transition(const Cocycle& c, long k, long l);

/// Π(k, l) for a 1-D cocycle: the product of |A_j| over j in [k, k + l).
double product_1d(const Cocycle& c, long k, long l);

/// Normalised directions e_{k+1} = A_k e_k / |A_k e_k| and the stretch factors
/// λ_k = |A_k e_k|, generated from e at index `base` forwards and backwards
/// over the whole window.
struct DirectionSequence {
  long k0 = 0;
  std::vector<VectorXd> e;      // fibres k0 .. k1 + 1
  std::vector<double> lambda;   // k0 .. k1

  const VectorXd& at(long k) const { return e.at(static_cast<std::size_t>(k - k0)); }
  double stretch(long k) const { return lambda.at(static_cast<std::size_t>(k - k0)); }
};

DirectionSequence normalized_directions(const Cocycle& c, const VectorXd& e, long base);

/// Π(k, l) = λ_k ... λ_{k+l-1} along a direction sequence.
double direction_product(const DirectionSequence& s, long k, long l);

}  // namespace holsh::cocycle
