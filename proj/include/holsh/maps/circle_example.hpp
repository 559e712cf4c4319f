#pragma once

#include <array>
#include <string>

#include "holsh/maps/smooth_map.hpp"

namespace holsh::maps {

struct CircleExampleParams {
  /// Half-width of the neighbourhoods U_u and U_s.
  double delta = 0.1;
};

/// Result of the dense-sampling checks on a circle example.
struct ConditionReport {
  bool monotone = false;
  bool two_fixed_points = false;
  bool absorbing = false;       // f^N(S^1 \ U_u) inside U_s
  bool repelling = false;       // f^-N(S^1 \ U_s) inside U_u
  bool separated = false;       // f^2(U_u) misses U_s
  int N = 0;
  double min_slope = 0.0;
  double max_slope = 0.0;

  bool ok() const noexcept {
    return monotone && two_fixed_points && absorbing && repelling && separated && N > 2;
  }
};

/// Circle diffeomorphism with a neutral repeller u = 0 and an attractor
/// s = 1/2. Near u it is x + x^3, near s it is x/2 in local coordinates, and on
/// the two arcs in between it is a quintic Hermite blend matching value and
/// two derivatives at both ends. The map is odd about u.
class CircleExample {
 public:
  explicit CircleExample(CircleExampleParams params = {});

  double delta() const noexcept { return delta_; }
  /// Iterate count N of the absorbing condition.
  int absorb_steps() const noexcept { return report_.N; }
  const ConditionReport& report() const noexcept { return report_; }

  /// The map on [0, 1/2] in the coordinate centred at u.
  double half(double p) const noexcept;
  double half_slope(double p) const noexcept;
  double half_inverse(double q) const;

  /// Lift to R: F(x + 1) = F(x) + 1, F(0) = 0, F(1/2) = 1/2.
  double lift(double x) const noexcept;
  double lift_slope(double x) const noexcept;
  double lift_inverse(double x) const;

  double eval(double p) const noexcept;      // on [0, 1)
  double slope(double p) const noexcept;
  double inverse(double p) const;

  /// Circle point for local coordinate x about u (x) or about s.
  static double from_u(double x) noexcept;
  static double from_s(double x) noexcept;
  /// Signed local coordinates in [-1/2, 1/2).
  static double to_u(double p) noexcept;
  static double to_s(double p) noexcept;

  bool in_Uu(double p) const noexcept;
  bool in_Us(double p) const noexcept;

  ConditionReport verify(int grid = 10000) const;

  SmoothMap as_map() const;

 private:
  double delta_;
  double a_;
  double b_;
  double h_;
  std::array<double, 6> c_{};
  ConditionReport report_;
};

/// Builds the circle example as a SmoothMap. Throws ConstructionError when δ
/// is outside (0, 1/8) or when the blend fails one of the sampled conditions.
SmoothMap build_circle_example(CircleExampleParams params = {});

/// g(x) = x + x^3.
inline double cubic_g(double x) noexcept { return x + x * x * x; }

/// Whether |g(x) - g(y)| >= ε + ε^3/4. Requires |x - y| >= ε > 0.
bool expansion_gap(double x, double y, double eps);

}  // namespace holsh::maps
