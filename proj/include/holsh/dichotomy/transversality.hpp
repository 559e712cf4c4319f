#pragma once

#include <optional>
#include <string>

#include "holsh/dichotomy/splitting.hpp"

namespace holsh::dichotomy {

enum class TransversalityStatus { pass, fail, a1_fails };

const char* to_string(TransversalityStatus s) noexcept;

struct TransversalityReport {
  TransversalityStatus status = TransversalityStatus::fail;
  bool pass = false;
  /// Smallest principal angle between E^{s,+} and E^{u,-} at the split index;
  /// π/2 when either space is trivial.
  double angle = 0.0;
  /// Smallest singular value of the concatenated orthonormal bases.
  double sigma_min = 0.0;
  /// m minus the numerical dimension of E^{s,+} + E^{u,-}.
  int defect_dimension = 0;
  std::string detail;
};

/// Checks E^{s,+} + E^{u,-} = R^m at the shared split index.
TransversalityReport pliss_transversality(const std::optional<DichotomySplitting>& forward,
                                          const std::optional<DichotomySplitting>& backward,
                                          double sigma_threshold = 1e-6);

}  // namespace holsh::dichotomy
