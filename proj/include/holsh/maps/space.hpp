#pragma once

#include <string_view>

#include <Eigen/Dense>

namespace holsh::maps {

/// Points and tangent vectors of the flat spaces used here (dimension <= 3).
using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, 3, 1>;
using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, 3, 3>;

enum class SpaceKind { circle, torus2, plane };

/// Reduces x to [0, 1).
double wrap_unit(double x) noexcept;
/// Reduces x to [-1/2, 1/2).
double wrap_signed(double x) noexcept;

/// A flat manifold: the circle R/Z, the torus R^2/Z^2, or R^m.
///
/// Charts are translations: exp_x(v) = x + v (reduced mod 1 on periodic
/// spaces) and log_x(q) is the wrap-aware difference q - x. Distances are the
/// quotient metric, so |log_x(q)| = dist(x, q) whenever each coordinate
/// difference is below 1/2.
class Space {
 public:
  static Space circle();
  static Space torus2();
  static Space plane(int dim);

  SpaceKind kind() const noexcept { return kind_; }
  int dim() const noexcept { return dim_; }
  bool periodic() const noexcept { return kind_ != SpaceKind::plane; }
  double injectivity_radius() const noexcept;
  std::string_view label() const noexcept;

  Vec wrap(const Vec& p) const;
  Vec exp(const Vec& base, const Vec& v) const;
  Vec log(const Vec& base, const Vec& q) const;
  double dist(const Vec& p, const Vec& q) const;

 private:
  Space(SpaceKind kind, int dim) : kind_(kind), dim_(dim) {}

  SpaceKind kind_;
  int dim_;
};

}  // namespace holsh::maps
