#include "holsh/cocycle/min_sup.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "holsh/common/error.hpp"

namespace holsh::cocycle {

void InhomogeneousProblem::validate() const {
  if (cocycle == nullptr) throw PreconditionError("problem has no cocycle");
  if (N < 1) throw PreconditionError("problem length N must be positive");
  if (i < cocycle->k0() || i + N - 1 > cocycle->k1()) {
    throw WindowError("problem indices [" + std::to_string(i) + ", " + std::to_string(i + N) +
                      "] outside cocycle window");
  }
  if (static_cast<long>(w.size()) != N) throw PreconditionError("problem needs exactly N forcing vectors");
  for (const VectorXd& wk : w) {
    if (wk.size() != cocycle->dim()) throw PreconditionError("forcing vector has the wrong dimension");
    if (!(wk.norm() <= w_max * (1.0 + 1e-12))) throw PreconditionError("forcing vector exceeds w_max");
  }
}

InhomogeneousProblem make_problem(const Cocycle& c, long i, std::vector<VectorXd> w) {
  InhomogeneousProblem p;
  p.cocycle = &c;
  p.i = i;
  p.N = static_cast<long>(w.size());
  p.w = std::move(w);
  p.validate();
  return p;
}

double recursion_residual(const InhomogeneousProblem& p, const std::vector<VectorXd>& v) {
  double worst = 0.0;
  for (long j = 0; j < p.N; ++j) {
    const VectorXd r = v[j + 1] - p.cocycle->A(p.i + j) * v[j] - p.w[j];
    worst = std::max(worst, r.norm());
  }
  return worst;
}

double sup_norm_from_initial(const InhomogeneousProblem& p, const VectorXd& vi) {
  VectorXd v = vi;
  double worst = v.norm();
  for (long j = 0; j < p.N; ++j) {
    v = p.cocycle->A(p.i + j) * v + p.w[j];
    worst = std::max(worst, v.norm());
  }
  return worst;
}

MinSupSolver::MinSupSolver(const Cocycle& c, long i, long N) : m_(c.dim()), N_(N) {
  if (N < 1) throw PreconditionError("problem length N must be positive");
  if (i < c.k0() || i + N - 1 > c.k1()) throw WindowError("solver window outside cocycle");
  const long rows = N * m_;
  const long cols = (N + 1) * m_;
  // Transposed system matrix: block column k holds -A_{i+k}^T over I.
  MatrixXd jt = MatrixXd::Zero(cols, rows);
  for (long k = 0; k < N; ++k) {
    jt.block(k * m_, k * m_, m_, m_) = -c.A(i + k).transpose();
    jt.block((k + 1) * m_, k * m_, m_, m_) = MatrixXd::Identity(m_, m_);
  }
  Eigen::HouseholderQR<MatrixXd> qr(jt);
  const MatrixXd q = qr.householderQ() * MatrixXd::Identity(cols, cols);
  const MatrixXd r = qr.matrixQR().topLeftCorner(rows, rows).triangularView<Eigen::Upper>();
  const MatrixXd q1t = q.leftCols(rows).transpose();
  G_ = r.triangularView<Eigen::Upper>().solve(q1t).transpose();
  Z_ = q.rightCols(m_);
}

VectorXd MinSupSolver::stack(const std::vector<VectorXd>& w) const {
  if (static_cast<long>(w.size()) != N_) throw PreconditionError("need exactly N forcing vectors");
  VectorXd s(N_ * m_);
  for (long k = 0; k < N_; ++k) s.segment(k * m_, m_) = w[k];
  return s;
}

double MinSupSolver::objective(const VectorXd& vp, const VectorXd& y) const {
  const VectorXd v = vp + Z_ * y;
  double worst = 0.0;
  for (long k = 0; k <= N_; ++k) worst = std::max(worst, v.segment(k * m_, m_).norm());
  return worst;
}

MinSupSolver::Minimum MinSupSolver::minimize(const VectorXd& vp) const {
  return m_ == 1 ? minimize_scalar(vp) : minimize_cone(vp);
}

MinSupSolver::Minimum MinSupSolver::minimize_scalar(const VectorXd& vp) const {
  Minimum out;
  out.y = VectorXd::Zero(1);
  const double top = vp.cwiseAbs().maxCoeff();
  if (top == 0.0) return out;
  const auto z = Z_.col(0);
  auto f = [&](double y) { return (vp + y * z).cwiseAbs().maxCoeff(); };
  // Any minimiser has |v|_2 <= sqrt(N+1) |v|_inf <= sqrt(N+1) |vp|_inf.
  const double bound = vp.norm() + std::sqrt(static_cast<double>(N_ + 1)) * top;
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = -bound;
  double b = bound;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int it = 0; it < 300 && b - a > 1e-16 * bound; ++it) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  double best = 0.5 * (a + b);
  double fbest = f(best);
  for (double y : {a, b, c, d}) {
    const double fy = f(y);
    if (fy < fbest) {
      fbest = fy;
      best = y;
    }
  }
  out.y(0) = best;
  out.F = fbest;
  return out;
}

namespace {

// Log-barrier path following for  min t  s.t. |a_k + B_k y| <= t, k in `set`,
// where B_k is block row k of z. Returns y; the caller recomputes the true
// objective at y over every block. M is the fibre dimension.
template <int M>
VectorXd barrier_solve(const VectorXd& a_all, const MatrixXd& z, const std::vector<long>& set,
                       const VectorXd& y_start) {
  using V = Eigen::Matrix<double, M, 1>;
  using B = Eigen::Matrix<double, M, M>;
  using V1 = Eigen::Matrix<double, M + 1, 1>;
  using H = Eigen::Matrix<double, M + 1, M + 1>;
  const std::size_t count = set.size();
  std::vector<V, Eigen::aligned_allocator<V>> a(count);
  std::vector<B, Eigen::aligned_allocator<B>> b(count);
  for (std::size_t j = 0; j < count; ++j) {
    a[j] = a_all.segment<M>(set[j] * M);
    b[j] = z.block<M, M>(set[j] * M, 0);
  }
  V y = y_start;
  double t = 0.0;
  for (std::size_t j = 0; j < count; ++j) t = std::max(t, (a[j] + b[j] * y).norm());
  t = 1.05 * t + 1e-3;
  auto value = [&](const V& yy, double tt, double mu) {
    double f = mu * tt;
    for (std::size_t j = 0; j < count; ++j) {
      const double s = tt * tt - (a[j] + b[j] * yy).squaredNorm();
      if (!(s > 0.0) || tt <= 0.0) return std::numeric_limits<double>::infinity();
      f -= std::log(s);
    }
    return f;
  };
  // Once t - |r_k| nears the rounding level of t the barrier value turns
  // noisy and line searches fail; that ends the path early.
  const double degree = 2.0 * static_cast<double>(count);
  bool stalled = false;
  for (double mu = 1.0; degree / mu > 1e-10 && !stalled; mu *= 16.0) {
    for (int newton = 0; newton < 30; ++newton) {
      V1 grad = V1::Zero();
      H hess = H::Zero();
      grad(M) = mu;
      for (std::size_t j = 0; j < count; ++j) {
        const V r = a[j] + b[j] * y;
        const double s = t * t - r.squaredNorm();
        V1 ds;
        ds.template head<M>() = -2.0 * (b[j].transpose() * r);
        ds(M) = 2.0 * t;
        grad -= ds / s;
        hess += ds * ds.transpose() / (s * s);
        hess.template topLeftCorner<M, M>() += (2.0 / s) * (b[j].transpose() * b[j]);
        hess(M, M) -= 2.0 / s;
      }
      const V1 step = -hess.ldlt().solve(grad);
      const double decrement = -grad.dot(step);
      if (!std::isfinite(decrement) || decrement < 1e-9) break;
      const double f0 = value(y, t, mu);
      double alpha = 1.0;
      bool moved = false;
      for (int ls = 0; ls < 60; ++ls, alpha *= 0.5) {
        const V yy = y + alpha * step.template head<M>();
        const double tt = t + alpha * step(M);
        if (value(yy, tt, mu) <= f0 - 0.25 * alpha * decrement) {
          y = yy;
          t = tt;
          moved = true;
          break;
        }
      }
      if (!moved) {
        stalled = true;
        break;
      }
    }
  }
  return y;
}

VectorXd barrier_dispatch(int m, const VectorXd& a, const MatrixXd& z, const std::vector<long>& set,
                          const VectorXd& y) {
  switch (m) {
    case 1: return barrier_solve<1>(a, z, set, y);
    case 2: return barrier_solve<2>(a, z, set, y);
    case 3: return barrier_solve<3>(a, z, set, y);
    default: throw PreconditionError("min-sup solver supports fibre dimension up to 3");
  }
}

}  // namespace

MinSupSolver::Minimum MinSupSolver::minimize_cone(const VectorXd& vp) const {
  Minimum out;
  out.y = VectorXd::Zero(m_);
  const long blocks = N_ + 1;
  std::vector<double> norms(static_cast<std::size_t>(blocks));
  for (long k = 0; k < blocks; ++k) norms[k] = vp.segment(k * m_, m_).norm();
  const double scale = *std::max_element(norms.begin(), norms.end());
  if (scale == 0.0) return out;
  const VectorXd a = vp / scale;

  // Constraint generation: solve on a working set of blocks, then add the
  // blocks that the working-set optimum violates. Short windows use every
  // block from the start.
  std::vector<long> order(static_cast<std::size_t>(blocks));
  std::iota(order.begin(), order.end(), 0L);
  const std::size_t first = std::min<std::size_t>(order.size(), 24);
  std::partial_sort(order.begin(), order.begin() + static_cast<long>(first), order.end(),
                    [&](long x, long y) { return norms[x] > norms[y]; });
  std::vector<long> set(order.begin(), order.begin() + static_cast<long>(first));
  std::vector<char> in_set(static_cast<std::size_t>(blocks), 0);
  for (long k : set) in_set[k] = 1;

  VectorXd y = VectorXd::Zero(m_);
  for (int round = 0; round < 200; ++round) {
    y = barrier_dispatch(m_, a, Z_, set, y);
    const VectorXd v = a + Z_ * y;
    double t_set = 0.0;
    for (long k : set) t_set = std::max(t_set, v.segment(k * m_, m_).norm());
    std::vector<std::pair<double, long>> violators;
    for (long k = 0; k < blocks; ++k) {
      if (in_set[k]) continue;
      const double nk = v.segment(k * m_, m_).norm();
      if (nk > t_set * (1.0 + 1e-13)) violators.emplace_back(nk, k);
    }
    if (violators.empty()) break;
    std::sort(violators.rbegin(), violators.rend());
    for (std::size_t j = 0; j < violators.size() && j < 8; ++j) {
      set.push_back(violators[j].second);
      in_set[violators[j].second] = 1;
    }
  }
  out.y = scale * y;
  out.F = objective(vp, out.y);
  return out;
}

MinSupSolution MinSupSolver::solve(const std::vector<VectorXd>& w) const {
  const VectorXd vp = particular(stack(w));
  const Minimum best = minimize(vp);
  const VectorXd v = vp + Z_ * best.y;
  MinSupSolution s;
  s.v.resize(static_cast<std::size_t>(N_ + 1));
  for (long k = 0; k <= N_; ++k) s.v[k] = v.segment(k * m_, m_);
  s.F = best.F;
  s.v0 = s.v.front();
  return s;
}

MinSupSolution solve_min_sup(const InhomogeneousProblem& problem) {
  problem.validate();
  const MinSupSolver solver(*problem.cocycle, problem.i, problem.N);
  return solver.solve(problem.w);
}

}  // namespace holsh::cocycle
