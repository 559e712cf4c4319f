#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "holsh/cocycle/cocycle.hpp"

namespace holsh::dichotomy {

using cocycle::Cocycle;
using cocycle::MatrixXd;
using cocycle::VectorXd;

/// Which side of the split index a splitting describes.
enum class Half { forward, backward };

const char* to_string(Half h) noexcept;

/// Stable and unstable subspaces on the indices [first, last] of one half,
/// with fitted constants: |Φ(k,l) v| <= C λ^l |v| on E^s and
/// |Φ(k,l) v| >= C^-1 λ^-l |v| on E^u.
struct DichotomySplitting {
  Half half = Half::forward;
  long split = 0;
  long first = 0;
  long last = 0;
  std::vector<MatrixXd> stable;    // orthonormal bases, one per index
  std::vector<MatrixXd> unstable;
  double C = 1.0;
  double lambda = 0.0;
  double lambda_stable = 0.0;      // 0 when E^s is trivial
  double lambda_unstable = 0.0;    // 0 when E^u is trivial
  double H = 1.0;
  double rms_residual = 0.0;
  double equivariance_angle = 0.0;
  double max_condition = 1.0;

  int stable_dim() const noexcept { return stable.empty() ? 0 : static_cast<int>(stable.front().cols()); }
  int unstable_dim() const noexcept { return unstable.empty() ? 0 : static_cast<int>(unstable.front().cols()); }
  const MatrixXd& stable_at(long k) const;
  const MatrixXd& unstable_at(long k) const;
};

struct DetectOptions {
  int T = 30;
  long split = 0;
  double max_lambda = 0.95;
  double max_residual = 0.1;
  double max_angle = 1e-6;
  double max_condition = 1e8;
  std::uint64_t seed = 1;
};

/// detect() together with the reason it declined, for reports.
struct DetectOutcome {
  std::optional<DichotomySplitting> splitting;
  std::string reason;   // empty on success
  double lambda = 0.0;
  double rms_residual = 0.0;
  double equivariance_angle = 0.0;
};

/// Finite-horizon dichotomy detection on one half of the window. The split
/// index is options.split clamped into the fibre range. The stable space at k
/// is the orthogonal complement of the expanding right singular directions
/// of the T-step transition from k; the unstable space at k in the backward
/// half is spanned by the expanding left singular directions of the T-step
/// transition ending at k. The complementary space is carried from the split
/// index along the cocycle (forwards for E^u, backwards for E^s).
/// Throws WindowError when the half holds fewer than 2T steps.
DetectOutcome detect_report(const Cocycle& c, Half half, const DetectOptions& options = {});

std::optional<DichotomySplitting> detect(const Cocycle& c, Half half, const DetectOptions& options = {});

/// Largest principal angle between the column spans of two matrices of equal
/// rank, computed from sines so that tiny angles keep their precision.
double max_principal_angle(const MatrixXd& a, const MatrixXd& b);

}  // namespace holsh::dichotomy
