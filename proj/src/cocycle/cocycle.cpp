#include "holsh/cocycle/cocycle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "holsh/common/error.hpp"

namespace holsh::cocycle {

namespace {

constexpr double kMaxCondition = 1e12;

void require_range(const Cocycle& c, long k, long l) {
  if (l < 0 || k < c.k0() || k + l - 1 > c.k1() || k > c.k1() + 1) {
    throw WindowError("transition [" + std::to_string(k) + ", " + std::to_string(k + l) +
                      "] outside cocycle window");
  }
}

}  // namespace

double operator_norm(const MatrixXd& a) {
  if (a.size() == 0) return 0.0;
  if (a.rows() == 1 && a.cols() == 1) return std::abs(a(0, 0));
  Eigen::JacobiSVD<MatrixXd> svd(a);
  return svd.singularValues()(0);
}

Cocycle::Cocycle(long k0, std::vector<MatrixXd> matrices, double R)
    : k0_(k0), mats_(std::move(matrices)) {
  if (mats_.empty()) throw PreconditionError("cocycle needs at least one matrix");
  dim_ = static_cast<int>(mats_.front().rows());
  inverses_.reserve(mats_.size());
  for (std::size_t j = 0; j < mats_.size(); ++j) {
    const MatrixXd& a = mats_[j];
    if (a.rows() != dim_ || a.cols() != dim_) throw PreconditionError("cocycle matrices must be square of equal size");
    Eigen::JacobiSVD<MatrixXd> svd(a);
    const auto& s = svd.singularValues();
    if (!(s(dim_ - 1) > 0.0) || s(0) / s(dim_ - 1) > kMaxCondition) {
      throw SingularError("cocycle matrix at index " + std::to_string(k0_ + static_cast<long>(j)) +
                          " is numerically singular");
    }
    inverses_.push_back(a.inverse());
  }
  R_ = R > 0.0 ? R : 1.1 * sampled_norm_sup();
}

Cocycle Cocycle::constant(const MatrixXd& a, long k0, long k1, double R) {
  if (k1 < k0) throw PreconditionError("empty cocycle window");
  return Cocycle(k0, std::vector<MatrixXd>(static_cast<std::size_t>(k1 - k0 + 1), a), R);
}

Cocycle Cocycle::scalar(std::vector<double> lambdas, long k0, double R) {
  std::vector<MatrixXd> mats;
  mats.reserve(lambdas.size());
  for (double l : lambdas) mats.push_back(MatrixXd::Constant(1, 1, l));
  return Cocycle(k0, std::move(mats), R);
}

const MatrixXd& Cocycle::A(long k) const {
  if (k < k0() || k > k1()) throw WindowError("index " + std::to_string(k) + " outside cocycle window");
  return mats_[static_cast<std::size_t>(k - k0_)];
}

const MatrixXd& Cocycle::A_inverse(long k) const {
  if (k < k0() || k > k1()) throw WindowError("index " + std::to_string(k) + " outside cocycle window");
  return inverses_[static_cast<std::size_t>(k - k0_)];
}

double Cocycle::sampled_norm_sup() const {
  double s = 0.0;
  for (std::size_t j = 0; j < mats_.size(); ++j) {
    s = std::max({s, operator_norm(mats_[j]), operator_norm(inverses_[j])});
  }
  return s;
}

bool Cocycle::satisfies_bound() const { return sampled_norm_sup() < R_; }

Cocycle Cocycle::slice(long a, long b) const {
  if (a < k0() || b > k1() || b < a) throw WindowError("slice outside cocycle window");
  std::vector<MatrixXd> part(mats_.begin() + (a - k0_), mats_.begin() + (b - k0_) + 1);
  return Cocycle(a, std::move(part), R_);
}

Cocycle from_orbit(const maps::SmoothMap& map, const maps::Vec& p0, long k0, long k1) {
  if (k1 < k0) throw PreconditionError("empty orbit window");
  if (k0 < 0 && !map.has_inverse()) throw PreconditionError(map.name + " has no inverse for k0 < 0");
  std::vector<MatrixXd> mats(static_cast<std::size_t>(k1 - k0 + 1));
  maps::Vec p = maps::iterate(map, map.space.wrap(p0), k0);
  for (long k = k0; k <= k1; ++k) {
    mats[static_cast<std::size_t>(k - k0)] = map.derivative(p);
    p = map.eval(p);
  }
  return Cocycle(k0, std::move(mats));
}

MatrixXd transition(const Cocycle& c, long k, long l) {
  require_range(c, k, l);
  MatrixXd t = MatrixXd::Identity(c.dim(), c.dim());
  for (long j = k; j < k + l; ++j) t = c.A(j) * t;
  return t;
}

double product_1d(const Cocycle& c, long k, long l) {
  if (c.dim() != 1) throw PreconditionError("product_1d needs a 1-D cocycle");
  require_range(c, k, l);
  double p = 1.0;
  for (long j = k; j < k + l; ++j) p *= std::abs(c.A(j)(0, 0));
  return p;
}

DirectionSequence normalized_directions(const Cocycle& c, const VectorXd& e, long base) {
  if (e.size() != c.dim()) throw PreconditionError("direction has the wrong dimension");
  if (base < c.k0() || base > c.k1() + 1) throw WindowError("direction base outside window");
  const double len = e.norm();
  if (!(len > 0.0)) throw PreconditionError("direction must be nonzero");
  DirectionSequence s;
  s.k0 = c.k0();
  s.e.resize(static_cast<std::size_t>(c.size() + 1));
  s.lambda.resize(static_cast<std::size_t>(c.size()));
  auto slot = [&](long k) { return static_cast<std::size_t>(k - c.k0()); };
  s.e[slot(base)] = e / len;
  for (long k = base; k <= c.k1(); ++k) {
    const VectorXd next = c.A(k) * s.e[slot(k)];
    s.lambda[slot(k)] = next.norm();
    s.e[slot(k + 1)] = next / s.lambda[slot(k)];
  }
  for (long k = base - 1; k >= c.k0(); --k) {
    const VectorXd prev = c.A_inverse(k) * s.e[slot(k + 1)];
    const double n = prev.norm();
    s.e[slot(k)] = prev / n;
    s.lambda[slot(k)] = 1.0 / n;
  }
  return s;
}

double direction_product(const DirectionSequence& s, long k, long l) {
  const long k1 = s.k0 + static_cast<long>(s.lambda.size()) - 1;
  if (l < 0 || k < s.k0 || k + l - 1 > k1) throw WindowError("product outside direction window");
  double p = 1.0;
  for (long j = k; j < k + l; ++j) p *= s.stretch(j);
  return p;
}

}  // namespace holsh::cocycle
