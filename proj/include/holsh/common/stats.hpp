#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

namespace holsh {

/// Ordinary least squares fit of y = intercept + slope * x.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
  double rms_residual = 0.0;
  std::size_t count = 0;
};

LineFit fit_line(std::span<const double> x, std::span<const double> y);

/// 64-bit FNV-1a, used for provenance tags on experiment output.
std::uint64_t fnv1a64(std::span<const char> bytes) noexcept;

}  // namespace holsh
