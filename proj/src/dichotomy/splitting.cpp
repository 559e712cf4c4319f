#include "holsh/dichotomy/splitting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/SVD>

#include "holsh/common/error.hpp"
#include "holsh/common/rng.hpp"
#include "holsh/common/stats.hpp"

namespace holsh::dichotomy {

namespace {

MatrixXd orthonormalize(const MatrixXd& a) {
  if (a.cols() == 0) return a;
  Eigen::HouseholderQR<MatrixXd> qr(a);
  return qr.householderQ() * MatrixXd::Identity(a.rows(), a.cols());
}

int count_expanding(const Eigen::VectorXd& singular_values) {
  int u = 0;
  for (Eigen::Index i = 0; i < singular_values.size(); ++i)
    if (singular_values(i) > 1.0) ++u;
  return u;
}

struct GrowthSamples {
  std::vector<double> l;
  std::vector<double> g;   // log(|Φ(k,l) v| / |v|)
};

// Projector onto span(keep) along span(other).
MatrixXd oblique_projector(const MatrixXd& keep, const MatrixXd& other) {
  const Eigen::Index m = keep.rows();
  if (other.cols() == 0) return MatrixXd::Identity(m, m);
  if (keep.cols() == 0) return MatrixXd::Zero(m, m);
  MatrixXd basis(m, m);
  basis << keep, other;
  MatrixXd select = MatrixXd::Zero(m, m);
  select.topLeftCorner(keep.cols(), keep.cols()).setIdentity();
  return basis * select * basis.inverse();
}

// Log growth of v under the cocycle from index k for l = 0..horizon. After
// each step the vector is projected back onto its own subspace along the
// complementary one; without this, rounding errors in a stable vector are
// amplified by the unstable rates and swamp the decay within a few steps.
void sample_growth(const Cocycle& c, long k, long horizon, VectorXd v, const std::vector<MatrixXd>& projectors,
                   long first, GrowthSamples& out) {
  double log_norm = 0.0;
  v.normalize();
  for (long l = 0; l <= horizon; ++l) {
    out.l.push_back(static_cast<double>(l));
    out.g.push_back(log_norm);
    if (l == horizon) break;
    v = projectors[static_cast<std::size_t>(k + l + 1 - first)] * (c.A(k + l) * v);
    const double n = v.norm();
    log_norm += std::log(n);
    v /= n;
  }
}

std::vector<VectorXd> probe_vectors(const MatrixXd& basis, Rng& rng) {
  std::vector<VectorXd> out;
  if (basis.cols() == 0) return out;
  for (Eigen::Index j = 0; j < basis.cols(); ++j) out.push_back(basis.col(j));
  if (basis.cols() > 1) {
    for (int r = 0; r < 2; ++r) {
      VectorXd coef(basis.cols());
      for (Eigen::Index j = 0; j < coef.size(); ++j) coef(j) = standard_normal(rng);
      out.push_back(basis * coef.normalized());
    }
  }
  return out;
}

double projection_norm(const MatrixXd& es, const MatrixXd& eu) {
  const MatrixXd p = oblique_projector(es, eu);
  return std::max(cocycle::operator_norm(p),
                  cocycle::operator_norm(MatrixXd::Identity(p.rows(), p.cols()) - p));
}

double condition(const MatrixXd& es, const MatrixXd& eu) {
  const Eigen::Index m = es.rows();
  MatrixXd basis(m, es.cols() + eu.cols());
  basis << es, eu;
  Eigen::JacobiSVD<MatrixXd> svd(basis);
  const auto& s = svd.singularValues();
  if (s.size() < m || s(s.size() - 1) <= 0.0) return std::numeric_limits<double>::infinity();
  return s(0) / s(s.size() - 1);
}

}  // namespace

const char* to_string(Half h) noexcept { return h == Half::forward ? "forward" : "backward"; }

const MatrixXd& DichotomySplitting::stable_at(long k) const {
  if (k < first || k > last) throw WindowError("splitting index " + std::to_string(k) + " outside its range");
  return stable[static_cast<std::size_t>(k - first)];
}

const MatrixXd& DichotomySplitting::unstable_at(long k) const {
  if (k < first || k > last) throw WindowError("splitting index " + std::to_string(k) + " outside its range");
  return unstable[static_cast<std::size_t>(k - first)];
}

double max_principal_angle(const MatrixXd& a, const MatrixXd& b) {
  if (a.cols() == 0 && b.cols() == 0) return 0.0;
  if (a.cols() == 0 || b.cols() == 0) return std::acos(0.0);
  const MatrixXd qa = orthonormalize(a);
  const MatrixXd qb = orthonormalize(b);
  const MatrixXd residual = qa - qb * (qb.transpose() * qa);
  const double s = std::min(1.0, cocycle::operator_norm(residual));
  return std::asin(s);
}

DetectOutcome detect_report(const Cocycle& c, Half half, const DetectOptions& options) {
  if (options.T < 1) throw PreconditionError("probe horizon T must be positive");
  const long T = options.T;
  const long first_fibre = c.k0();
  const long last_fibre = c.k1() + 1;
  const long s = std::clamp(options.split, first_fibre, last_fibre);
  const int m = c.dim();

  DichotomySplitting sp;
  sp.half = half;
  sp.split = s;

  if (half == Half::forward) {
    if (last_fibre - s < 2 * T)
      throw WindowError("forward half holds " + std::to_string(last_fibre - s) + " steps, needs " +
                        std::to_string(2 * T));
    sp.first = s;
    sp.last = last_fibre - T;
    int u = 0;
    for (long k = sp.first; k <= sp.last; ++k) {
      Eigen::JacobiSVD<MatrixXd> svd(cocycle::transition(c, k, T), Eigen::ComputeFullV);
      if (k == sp.first) u = count_expanding(svd.singularValues());
      sp.stable.push_back(svd.matrixV().rightCols(m - u));
      if (k == sp.first) sp.unstable.push_back(svd.matrixV().leftCols(u));
      else sp.unstable.push_back(orthonormalize(c.A(k - 1) * sp.unstable.back()));
    }
  } else {
    if (s - first_fibre < 2 * T)
      throw WindowError("backward half holds " + std::to_string(s - first_fibre) + " steps, needs " +
                        std::to_string(2 * T));
    sp.first = first_fibre + T;
    sp.last = s;
    const std::size_t count = static_cast<std::size_t>(sp.last - sp.first + 1);
    sp.stable.resize(count);
    sp.unstable.resize(count);
    int u = 0;
    for (long k = sp.last; k >= sp.first; --k) {
      const auto idx = static_cast<std::size_t>(k - sp.first);
      Eigen::JacobiSVD<MatrixXd> svd(cocycle::transition(c, k - T, T), Eigen::ComputeFullU);
      if (k == sp.last) u = count_expanding(svd.singularValues());
      sp.unstable[idx] = svd.matrixU().leftCols(u);
      if (k == sp.last) sp.stable[idx] = svd.matrixU().rightCols(m - u);
      else sp.stable[idx] = orthonormalize(c.A_inverse(k) * sp.stable[idx + 1]);
    }
  }

  DetectOutcome out;

  double angle = 0.0;
  for (long k = sp.first; k < sp.last; ++k) {
    const auto idx = static_cast<std::size_t>(k - sp.first);
    if (sp.stable_dim() > 0)
      angle = std::max(angle, max_principal_angle(c.A(k) * sp.stable[idx], sp.stable[idx + 1]));
    if (sp.unstable_dim() > 0)
      angle = std::max(angle, max_principal_angle(c.A(k) * sp.unstable[idx], sp.unstable[idx + 1]));
  }
  sp.equivariance_angle = angle;
  out.equivariance_angle = angle;

  // Growth fits on up to 16 evenly spread indices, each followed by a
  // horizon that stays inside the range where subspaces are known.
  std::vector<MatrixXd> to_stable, to_unstable;
  for (std::size_t idx = 0; idx < sp.stable.size(); ++idx) {
    to_stable.push_back(oblique_projector(sp.stable[idx], sp.unstable[idx]));
    to_unstable.push_back(oblique_projector(sp.unstable[idx], sp.stable[idx]));
  }
  Rng rng = make_stream(options.seed, half == Half::forward ? 0 : 1);
  GrowthSamples stable_growth, unstable_growth;
  const long span = sp.last - sp.first;
  const long horizon = std::min<long>(T, span / 2);
  const long room = span - horizon;
  const long picks = std::min<long>(16, room + 1);
  for (long p = 0; p < picks; ++p) {
    const long k = sp.first + (picks == 1 ? 0 : p * room / (picks - 1));
    const auto idx = static_cast<std::size_t>(k - sp.first);
    for (const auto& v : probe_vectors(sp.stable[idx], rng))
      sample_growth(c, k, horizon, v, to_stable, sp.first, stable_growth);
    for (const auto& v : probe_vectors(sp.unstable[idx], rng))
      sample_growth(c, k, horizon, v, to_unstable, sp.first, unstable_growth);
    sp.H = std::max(sp.H, projection_norm(sp.stable[idx], sp.unstable[idx]));
    sp.max_condition = std::max(sp.max_condition, condition(sp.stable[idx], sp.unstable[idx]));
  }

  double sq = 0.0;
  std::size_t n = 0;
  double log_lambda = -std::numeric_limits<double>::infinity();
  if (!stable_growth.g.empty()) {
    const LineFit f = fit_line(stable_growth.l, stable_growth.g);
    sp.lambda_stable = std::exp(f.slope);
    log_lambda = std::max(log_lambda, f.slope);
    sq += f.rms_residual * f.rms_residual * static_cast<double>(f.count);
    n += f.count;
  }
  if (!unstable_growth.g.empty()) {
    const LineFit f = fit_line(unstable_growth.l, unstable_growth.g);
    sp.lambda_unstable = std::exp(-f.slope);
    log_lambda = std::max(log_lambda, -f.slope);
    sq += f.rms_residual * f.rms_residual * static_cast<double>(f.count);
    n += f.count;
  }
  sp.lambda = std::exp(log_lambda);
  sp.rms_residual = n > 0 ? std::sqrt(sq / static_cast<double>(n)) : 0.0;
  out.lambda = sp.lambda;
  out.rms_residual = sp.rms_residual;

  double logC = 0.0;
  for (std::size_t j = 0; j < stable_growth.g.size(); ++j)
    logC = std::max(logC, stable_growth.g[j] - stable_growth.l[j] * log_lambda);
  for (std::size_t j = 0; j < unstable_growth.g.size(); ++j)
    logC = std::max(logC, -unstable_growth.g[j] - unstable_growth.l[j] * log_lambda);
  sp.C = std::exp(logC);

  if (!(sp.lambda < options.max_lambda)) {
    out.reason = "no exponential separation: fitted lambda " + std::to_string(sp.lambda);
  } else if (!(sp.rms_residual < options.max_residual)) {
    out.reason = "growth is not exponential: log residual " + std::to_string(sp.rms_residual);
  } else if (!(angle <= options.max_angle)) {
    out.reason = "subspaces are not equivariant: angle " + std::to_string(angle);
  } else if (!(sp.max_condition < options.max_condition)) {
    out.reason = "subspaces nearly coincide: condition " + std::to_string(sp.max_condition);
  } else {
    out.splitting = std::move(sp);
  }
  return out;
}

std::optional<DichotomySplitting> detect(const Cocycle& c, Half half, const DetectOptions& options) {
  return detect_report(c, half, options).splitting;
}

}  // namespace holsh::dichotomy
