#pragma once

#include <string>

#include "holsh/dichotomy/splitting.hpp"
#include "holsh/dichotomy/transversality.hpp"
#include "holsh/maps/smooth_map.hpp"

namespace holsh::dichotomy {

enum class CheckStatus { pass, fail, error };

const char* to_string(CheckStatus s) noexcept;

/// Finite-horizon numerical evidence for Property A along one orbit.
struct PropertyAReport {
  CheckStatus a1_forward = CheckStatus::fail;
  CheckStatus a1_backward = CheckStatus::fail;
  CheckStatus a2 = CheckStatus::fail;
  DetectOutcome forward;
  DetectOutcome backward;
  TransversalityReport transversality;
  std::string error;

  bool hyperbolic_like() const noexcept {
    return a1_forward == CheckStatus::pass && a1_backward == CheckStatus::pass && a2 == CheckStatus::pass;
  }
  /// "hyperbolic-like" or "not hyperbolic-like".
  std::string verdict() const;
};

/// Builds the derivative cocycle over fibres [-horizon, horizon] of the orbit
/// of p0 and runs detection on both halves and the transversality test.
/// Failures of the orbit or of the detection are reported as error statuses.
PropertyAReport property_A_check(const maps::SmoothMap& map, const maps::Vec& p0, long horizon = 100,
                                 const DetectOptions& options = {});

/// The same test on a given cocycle split at options.split.
PropertyAReport property_A_check(const Cocycle& c, const DetectOptions& options = {});

}  // namespace holsh::dichotomy
