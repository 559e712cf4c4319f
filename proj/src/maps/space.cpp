#include "holsh/maps/space.hpp"

#include <cmath>
#include <limits>

#include "holsh/common/error.hpp"

namespace holsh::maps {

double wrap_unit(double x) noexcept {
  double r = x - std::floor(x);
  return r >= 1.0 ? 0.0 : r;
}

double wrap_signed(double x) noexcept { return x - std::floor(x + 0.5); }

Space Space::circle() { return Space(SpaceKind::circle, 1); }

Space Space::torus2() { return Space(SpaceKind::torus2, 2); }

Space Space::plane(int dim) {
  if (dim < 1 || dim > 3) throw PreconditionError("plane dimension must be 1, 2 or 3");
  return Space(SpaceKind::plane, dim);
}

double Space::injectivity_radius() const noexcept {
  return periodic() ? 0.5 : std::numeric_limits<double>::infinity();
}

std::string_view Space::label() const noexcept {
  switch (kind_) {
    case SpaceKind::circle: return "circle";
    case SpaceKind::torus2: return "torus2";
    case SpaceKind::plane: return "plane";
  }
  return "?";
}

Vec Space::wrap(const Vec& p) const {
  if (!periodic()) return p;
  Vec r(p.size());
  for (Eigen::Index i = 0; i < p.size(); ++i) r[i] = wrap_unit(p[i]);
  return r;
}

Vec Space::exp(const Vec& base, const Vec& v) const { return wrap(base + v); }

Vec Space::log(const Vec& base, const Vec& q) const {
  Vec r = q - base;
  if (periodic()) {
    for (Eigen::Index i = 0; i < r.size(); ++i) r[i] = wrap_signed(r[i]);
  }
  return r;
}

double Space::dist(const Vec& p, const Vec& q) const { return log(p, q).norm(); }

}  // namespace holsh::maps
