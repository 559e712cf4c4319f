#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "holsh/maps/smooth_map.hpp"

namespace holsh::pseudo {

using maps::Vec;

/// Points y_0..y_n with one-step errors below d.
struct Pseudotrajectory {
  std::vector<Vec> points;
  double d = 0.0;
  maps::Space space = maps::Space::circle();

  long length() const noexcept { return static_cast<long>(points.size()) - 1; }
};

enum class NoiseKind { none, uniform_ball, adversarial_outward };

struct NoiseModel {
  NoiseKind kind = NoiseKind::none;
  double d = 0.0;
  std::uint64_t seed = 0;
};

/// Fraction of d used by the adversarial push.
inline constexpr double kAdversarialFraction = 0.9;
/// Uniform-ball radius as a fraction of d. Slightly below 1 so that the strict
/// inequality survives the rounding of periodic coordinates.
inline constexpr double kUniformFraction = 0.999;

/// y_0 = start and y_{k+1} = exp_{f(y_k)}(noise_k), k < n.
Pseudotrajectory generate(const maps::SmoothMap& map, const Vec& start, long n,
                          const NoiseModel& noise);

struct Validation {
  bool ok = false;
  double max_defect = 0.0;
};

/// ok iff every one-step defect dist(y_{k+1}, f(y_k)) is below d.
Validation validate(const maps::SmoothMap& map, const Pseudotrajectory& traj, double d);

NoiseKind parse_noise_kind(const std::string& text);
const char* to_string(NoiseKind kind) noexcept;

}  // namespace holsh::pseudo
