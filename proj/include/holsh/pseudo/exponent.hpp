#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "holsh/pseudo/pseudotrajectory.hpp"
#include "holsh/pseudo/shadowing.hpp"

namespace holsh::pseudo {

/// Window length as a function of d: either fixed, or ceil(C d^-omega).
struct WindowRule {
  enum class Kind { fixed, power };
  Kind kind = Kind::power;
  long n = 100;
  double C = 1.0;
  double omega = 0.5;

  static WindowRule fixed(long n);
  static WindowRule power(double C, double omega);
  long window(double d) const;
};

/// `points` values from lo to hi, equally spaced in log scale.
std::vector<double> geometric_grid(double lo, double hi, int points);

enum class SolverKind { optimal, newton };

SolverKind parse_solver_kind(const std::string& text);
const char* to_string(SolverKind kind) noexcept;

struct ExponentOptions {
  std::vector<double> d_grid;
  WindowRule rule;
  int trials = 32;
  std::uint64_t seed = 1;
  NoiseKind noise = NoiseKind::adversarial_outward;
  SolverKind solver = SolverKind::optimal;
  unsigned jobs = 1;
  /// Only d within this many decades of the smallest d enter the fit.
  double fit_decades = 4.0;
};

struct ExponentCell {
  double d = 0.0;
  long n = 0;
  int trial = 0;
  double epsilon = 0.0;
  std::string solver;
  ShadowStatus status = ShadowStatus::ok;
};

struct ExponentRow {
  double d = 0.0;
  long n = 0;
  double worst_epsilon = 0.0;
  int failures = 0;
  bool in_fit = false;
};

struct ExponentEstimate {
  double theta_hat = 0.0;
  double std_error = 0.0;
  double intercept = 0.0;
  std::size_t n_cells = 0;   // grid rows used by the fit
  int excluded = 0;          // trials dropped after solver failures
  std::vector<ExponentRow> rows;
  std::vector<ExponentCell> cells;
};

/// For every d and trial: draw a probe start and a noise stream, generate a
/// d-pseudotrajectory of the rule's length, and shadow it. The worst ε per d is
/// regressed on d in log-log scale. Trial t uses the same random stream at
/// every d, so the rows differ only through d.
ExponentEstimate estimate_holder_exponent(const maps::SmoothMap& map, const ExponentOptions& options);

}  // namespace holsh::pseudo
