#include "holsh/dichotomy/reduction.hpp"

#include <algorithm>
#include <cmath>

#include "holsh/common/error.hpp"

namespace holsh::dichotomy {

namespace {

// Orthonormal basis of the orthogonal complement of the unit vector e.
MatrixXd complement_of(const VectorXd& e) {
  const MatrixXd column = e;
  Eigen::HouseholderQR<MatrixXd> qr(column);
  const MatrixXd q = qr.householderQ();
  return q.rightCols(e.size() - 1);
}

}  // namespace

Cocycle Reduction::reduced(double R) const { return Cocycle(k0, B, R); }

double Reduction::norm_sup() const {
  double s = 0.0;
  for (std::size_t k = 0; k < B.size(); ++k) {
    s = std::max(s, cocycle::operator_norm(B[k]));
    s = std::max(s, cocycle::operator_norm(B[k].inverse()));
    s = std::max(s, D[k].norm());
  }
  return s;
}

Reduction reduce(const Cocycle& c, const VectorXd& e0) {
  const int m = c.dim();
  if (m < 2) throw PreconditionError("reduction needs dimension at least 2");
  if (e0.size() != m) throw PreconditionError("direction has the wrong dimension");
  if (std::abs(e0.norm() - 1.0) > 1e-12) throw PreconditionError("direction must be a unit vector");

  Reduction r;
  r.k0 = c.k0();
  r.directions = cocycle::normalized_directions(c, e0, c.k0());
  r.complement.push_back(complement_of(r.directions.at(c.k0())));
  for (long k = c.k0(); k <= c.k1(); ++k) {
    const VectorXd& next = r.directions.at(k + 1);
    const MatrixXd image = c.A(k) * r.complement.back();
    const MatrixXd projected = image - next * (next.transpose() * image);
    Eigen::HouseholderQR<MatrixXd> qr(projected);
    MatrixXd u = qr.householderQ() * MatrixXd::Identity(m, m - 1);
    // Keep U_{k+1} exactly orthogonal to e_{k+1} despite rounding in the QR.
    u -= next * (next.transpose() * u);
    Eigen::HouseholderQR<MatrixXd> clean(u);
    u = clean.householderQ() * MatrixXd::Identity(m, m - 1);
    r.B.push_back(u.transpose() * image);
    r.D.push_back(next.transpose() * image);
    r.complement.push_back(std::move(u));
  }
  return r;
}

double split_recursion_residual(const Cocycle& c, const Reduction& r, const VectorXd& v0,
                                const std::vector<VectorXd>& w) {
  if (static_cast<long>(w.size()) > c.size()) throw WindowError("forcing longer than the cocycle window");
  VectorXd v = v0;
  double alpha = r.directions.at(c.k0()).dot(v0);
  VectorXd beta = r.U_at(c.k0()).transpose() * v0;
  double worst = 0.0;
  for (std::size_t j = 0; j < w.size(); ++j) {
    const long k = c.k0() + static_cast<long>(j);
    v = c.A(k) * v + w[j];
    const VectorXd& e = r.directions.at(k + 1);
    const MatrixXd& U = r.U_at(k + 1);
    const double alpha_next = r.directions.stretch(k) * alpha + (r.D_at(k) * beta)(0) + e.dot(w[j]);
    beta = r.B_at(k) * beta + U.transpose() * w[j];
    alpha = alpha_next;
    const VectorXd rebuilt = alpha * e + U * beta;
    worst = std::max(worst, (rebuilt - v).norm() / std::max(1.0, v.norm()));
  }
  return worst;
}

}  // namespace holsh::dichotomy
