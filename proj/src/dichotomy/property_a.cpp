#include "holsh/dichotomy/property_a.hpp"

#include "holsh/cocycle/cocycle.hpp"
#include "holsh/common/error.hpp"

namespace holsh::dichotomy {

const char* to_string(CheckStatus s) noexcept {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::error: return "error";
  }
  return "?";
}

std::string PropertyAReport::verdict() const {
  return hyperbolic_like() ? "hyperbolic-like" : "not hyperbolic-like";
}

PropertyAReport property_A_check(const Cocycle& c, const DetectOptions& options) {
  PropertyAReport r;
  try {
    r.forward = detect_report(c, Half::forward, options);
    r.a1_forward = r.forward.splitting ? CheckStatus::pass : CheckStatus::fail;
  } catch (const Error& e) {
    r.a1_forward = CheckStatus::error;
    r.error = e.what();
  }
  try {
    r.backward = detect_report(c, Half::backward, options);
    r.a1_backward = r.backward.splitting ? CheckStatus::pass : CheckStatus::fail;
  } catch (const Error& e) {
    r.a1_backward = CheckStatus::error;
    if (r.error.empty()) r.error = e.what();
  }
  r.transversality = pliss_transversality(r.forward.splitting, r.backward.splitting);
  switch (r.transversality.status) {
    case TransversalityStatus::pass: r.a2 = CheckStatus::pass; break;
    case TransversalityStatus::fail: r.a2 = CheckStatus::fail; break;
    case TransversalityStatus::a1_fails: r.a2 = CheckStatus::fail; break;
  }
  return r;
}

PropertyAReport property_A_check(const maps::SmoothMap& map, const maps::Vec& p0, long horizon,
                                 const DetectOptions& options) {
  if (horizon < 1) throw PreconditionError("horizon must be positive");
  try {
    const Cocycle c = cocycle::from_orbit(map, p0, -horizon, horizon - 1);
    DetectOptions o = options;
    o.split = 0;
    return property_A_check(c, o);
  } catch (const Error& e) {
    PropertyAReport r;
    r.a1_forward = r.a1_backward = r.a2 = CheckStatus::error;
    r.error = e.what();
    return r;
  }
}

}  // namespace holsh::dichotomy
