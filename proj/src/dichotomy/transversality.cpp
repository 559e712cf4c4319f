#include "holsh/dichotomy/transversality.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/SVD>

#include "holsh/common/error.hpp"

namespace holsh::dichotomy {

const char* to_string(TransversalityStatus s) noexcept {
  switch (s) {
    case TransversalityStatus::pass: return "pass";
    case TransversalityStatus::fail: return "fail";
    case TransversalityStatus::a1_fails: return "A1 fails";
  }
  return "?";
}

TransversalityReport pliss_transversality(const std::optional<DichotomySplitting>& forward,
                                          const std::optional<DichotomySplitting>& backward,
                                          double sigma_threshold) {
  TransversalityReport r;
  if (!forward || !backward) {
    r.status = TransversalityStatus::a1_fails;
    r.detail = !forward && !backward ? "no dichotomy on either half"
               : !forward            ? "no dichotomy on the forward half"
                                     : "no dichotomy on the backward half";
    return r;
  }
  if (forward->split != backward->split)
    throw PreconditionError("splittings do not share the split index");

  const long s = forward->split;
  const MatrixXd& es = forward->stable_at(s);
  const MatrixXd& eu = backward->unstable_at(s);
  const Eigen::Index m = es.rows();

  MatrixXd combined(m, es.cols() + eu.cols());
  combined << es, eu;
  int rank = 0;
  r.sigma_min = 0.0;
  if (combined.cols() > 0) {
    Eigen::JacobiSVD<MatrixXd> svd(combined);
    const auto& sv = svd.singularValues();
    for (Eigen::Index i = 0; i < sv.size(); ++i)
      if (sv(i) > sigma_threshold) ++rank;
    r.sigma_min = combined.cols() >= m ? sv(m - 1) : 0.0;
  }
  r.defect_dimension = static_cast<int>(m) - std::min<int>(rank, static_cast<int>(m));

  if (es.cols() == 0 || eu.cols() == 0) {
    r.angle = std::numbers::pi / 2;
  } else {
    Eigen::JacobiSVD<MatrixXd> cross(es.transpose() * eu);
    r.angle = std::acos(std::min(1.0, cross.singularValues()(0)));
  }

  r.pass = r.defect_dimension == 0 && r.sigma_min > sigma_threshold;
  r.status = r.pass ? TransversalityStatus::pass : TransversalityStatus::fail;
  if (!r.pass) r.detail = "stable and unstable spaces miss " + std::to_string(r.defect_dimension) + " dimension(s)";
  return r;
}

}  // namespace holsh::dichotomy
