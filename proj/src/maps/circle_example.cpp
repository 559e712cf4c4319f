#include "holsh/maps/circle_example.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "holsh/common/error.hpp"

namespace holsh::maps {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Noise amplitude relative to d used by the adversarial experiments; the probe
// starts near the radius where the cubic drift of x + x^3 balances it.
constexpr double kPushFraction = 0.9;

}  // namespace

CircleExample::CircleExample(CircleExampleParams params) : delta_(params.delta) {
  if (!(delta_ > 0.0 && delta_ < 0.125)) {
    throw ConstructionError("circle example needs 0 < delta < 1/8");
  }
  a_ = delta_;
  b_ = 0.5 - delta_;
  h_ = b_ - a_;

  // Quintic in t = (p - a)/h matching value, slope and curvature of x + x^3 at
  // a and of 1/2 + (p - 1/2)/2 at b.
  Eigen::Matrix<double, 6, 6> m;
  m << 1, 0, 0, 0, 0, 0,
       0, 1, 0, 0, 0, 0,
       0, 0, 2, 0, 0, 0,
       1, 1, 1, 1, 1, 1,
       0, 1, 2, 3, 4, 5,
       0, 0, 2, 6, 12, 20;
  Eigen::Matrix<double, 6, 1> rhs;
  rhs << a_ + a_ * a_ * a_, (1.0 + 3.0 * a_ * a_) * h_, 6.0 * a_ * h_ * h_,
      0.5 + (b_ - 0.5) / 2.0, 0.5 * h_, 0.0;
  const Eigen::Matrix<double, 6, 1> c = m.fullPivLu().solve(rhs);
  for (int i = 0; i < 6; ++i) c_[i] = c[i];

  report_ = verify();
}

double CircleExample::half(double p) const noexcept {
  if (p <= a_) return p + p * p * p;
  if (p >= b_) return 0.5 + (p - 0.5) / 2.0;
  const double t = (p - a_) / h_;
  return c_[0] + t * (c_[1] + t * (c_[2] + t * (c_[3] + t * (c_[4] + t * c_[5]))));
}

double CircleExample::half_slope(double p) const noexcept {
  if (p <= a_) return 1.0 + 3.0 * p * p;
  if (p >= b_) return 0.5;
  const double t = (p - a_) / h_;
  return (c_[1] + t * (2.0 * c_[2] + t * (3.0 * c_[3] + t * (4.0 * c_[4] + t * 5.0 * c_[5])))) / h_;
}

double CircleExample::half_inverse(double q) const {
  if (q <= 0.0) return 0.0;
  if (q >= 0.5) return 0.5;
  if (q >= half(b_)) return 0.5 + 2.0 * (q - 0.5);
  if (q <= half(a_)) {
    // Newton on p + p^3 = q from p = q converges monotonically from above.
    double p = q;
    for (int i = 0; i < 60; ++i) {
      const double step = (p + p * p * p - q) / (1.0 + 3.0 * p * p);
      const double next = p - step;
      if (next == p || !(next < p)) break;
      p = next;
    }
    return p;
  }
  double lo = a_;
  double hi = b_;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (half(mid) < q ? lo : hi) = mid;
  }
  return std::abs(half(lo) - q) <= std::abs(half(hi) - q) ? lo : hi;
}

double CircleExample::lift(double x) const noexcept {
  const double n = std::floor(x + 0.5);
  const double p = x - n;
  return p >= 0.0 ? n + half(p) : n - half(-p);
}

double CircleExample::lift_slope(double x) const noexcept {
  const double p = x - std::floor(x + 0.5);
  return half_slope(std::abs(p));
}

double CircleExample::lift_inverse(double x) const {
  const double n = std::floor(x + 0.5);
  const double q = x - n;
  return q >= 0.0 ? n + half_inverse(q) : n - half_inverse(-q);
}

double CircleExample::eval(double p) const noexcept { return wrap_unit(lift(p)); }
double CircleExample::slope(double p) const noexcept { return lift_slope(p); }
double CircleExample::inverse(double p) const { return wrap_unit(lift_inverse(p)); }

double CircleExample::from_u(double x) noexcept { return wrap_unit(x); }
double CircleExample::from_s(double x) noexcept { return wrap_unit(0.5 + x); }
double CircleExample::to_u(double p) noexcept { return wrap_signed(p); }
double CircleExample::to_s(double p) noexcept { return wrap_signed(p - 0.5); }

bool CircleExample::in_Uu(double p) const noexcept { return std::abs(to_u(p)) < delta_; }
bool CircleExample::in_Us(double p) const noexcept { return std::abs(to_s(p)) < delta_; }

ConditionReport CircleExample::verify(int grid) const {
  ConditionReport r;
  grid = std::max(grid, 100);

  r.min_slope = std::numeric_limits<double>::infinity();
  r.max_slope = 0.0;
  bool increasing = true;
  bool moving = true;
  double prev = half(0.0);
  for (int i = 1; i <= 4 * grid; ++i) {
    const double p = 0.5 * i / (4.0 * grid);
    const double s = half_slope(p);
    r.min_slope = std::min(r.min_slope, s);
    r.max_slope = std::max(r.max_slope, s);
    const double v = half(p);
    increasing = increasing && v > prev;
    prev = v;
    if (i < 4 * grid) moving = moving && v > p;
  }
  r.monotone = increasing && r.min_slope > 0.0;
  r.two_fixed_points = moving && half(0.0) == 0.0 && std::abs(half(0.5) - 0.5) < 4 * kEps;

  // By monotonicity the slowest points are the ones on the boundaries of U_u
  // and U_s, so they fix N. The grid sweep below then confirms it.
  int fwd = 0;
  for (double p = a_; std::abs(p - 0.5) >= delta_ && fwd < 100000; ++fwd) p = half(p);
  int bwd = 0;
  for (double p = b_; std::abs(p) >= delta_ && bwd < 100000; ++bwd) p = half_inverse(p);
  r.N = std::max(fwd, bwd);

  r.absorbing = r.repelling = r.separated = true;
  auto sweep = [&](double p) {
    if (!in_Uu(p)) {
      double x = p;
      for (int k = 0; k < r.N; ++k) x = eval(x);
      r.absorbing = r.absorbing && in_Us(x);
    } else {
      r.separated = r.separated && !in_Us(eval(eval(p)));
    }
    if (!in_Us(p)) {
      double x = p;
      for (int k = 0; k < r.N; ++k) x = inverse(x);
      r.repelling = r.repelling && in_Uu(x);
    }
  };
  for (int i = 0; i < grid; ++i) {
    const double p = (i + 0.5) / grid;
    if (p != 0.0 && p != 0.5) sweep(p);
  }
  for (double p : {from_u(delta_), from_u(-delta_), from_s(delta_), from_s(-delta_)}) sweep(p);
  return r;
}

SmoothMap CircleExample::as_map() const {
  SmoothMap m;
  m.name = "circle_example";
  m.space = Space::circle();
  const CircleExample self = *this;
  m.eval = [self](const Vec& x) { return Vec::Constant(1, self.eval(x[0])); };
  m.derivative = [self](const Vec& x) { return Mat::Constant(1, 1, self.slope(x[0])); };
  m.inverse = [self](const Vec& x) { return Vec::Constant(1, self.inverse(x[0])); };
  m.lift1d = [self](double x) { return self.lift(x); };
  m.attractors = {Vec::Constant(1, 0.5)};
  m.probe = [](Rng& rng, double d) {
    const double xi = uniform(rng, 0.5, 1.5);
    const double side = uniform01(rng) < 0.5 ? -1.0 : 1.0;
    return Vec::Constant(1, from_u(side * xi * std::cbrt(kPushFraction * d)));
  };

  std::vector<Vec> region;
  region.reserve(2000);
  for (int i = 0; i < 2000; ++i) region.push_back(Vec::Constant(1, (i + 0.5) / 2000.0));
  calibrate_c2_bound(m, region, 0.01);
  return m;
}

SmoothMap build_circle_example(CircleExampleParams params) {
  const CircleExample ex(params);
  const auto& r = ex.report();
  if (!r.monotone) throw ConstructionError("circle example blend is not monotone");
  if (!r.ok()) throw ConstructionError("circle example violates the absorbing conditions");
  return ex.as_map();
}

bool expansion_gap(double x, double y, double eps) {
  const double gap = std::abs(x - y);
  // Inputs like y = x + eps carry rounding of order ulp(x) in the difference.
  const double slack = 4.0 * kEps * (std::abs(x) + std::abs(y));
  if (!(eps > 0.0) || gap < eps - slack) throw PreconditionError("expansion_gap needs |x - y| >= eps > 0");
  // g(x) - g(y) = (x - y)(1 + x^2 + xy + y^2) and the bracket is
  // 1 + (x - y)^2/4 + 3(x + y)^2/4, which keeps every term nonnegative.
  const double lhs = gap * (1.0 + 0.25 * gap * gap + 0.75 * (x + y) * (x + y));
  const double rhs = eps + eps * eps * eps / 4.0;
  return lhs >= rhs * (1.0 - 8.0 * kEps) - 2.0 * slack;
}

}  // namespace holsh::maps
