#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "holsh/common/error.hpp"
#include "holsh/pseudo/exponent.hpp"

namespace holsh::cli {

/// Process exit codes.
enum ExitCode : int {
  kPass = 0,
  kFail = 1,
  kInconclusive = 2,
  kConfigError = 3,
  kInvalidGrid = 4,
  kUnwritableOutput = 5,
};

/// A configuration problem, carrying the exit code it maps to.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& what, int code = kConfigError) : Error(what), code_(code) {}
  int code() const noexcept { return code_; }

 private:
  int code_;
};

struct GridSpec {
  double start = 1e-6;
  double stop = 1e-3;
  int points = 8;
  bool geometric = true;

  /// Throws ConfigError(kInvalidGrid) for empty or malformed grids.
  std::vector<double> values() const;
};

struct ExperimentConfig {
  std::string subcommand;
  std::string map = "circle_example";
  std::uint64_t seed = 1;
  GridSpec d_grid;
  pseudo::WindowRule window = pseudo::WindowRule::power(1.0, 2.0 / 3.0);
  int trials = 32;
  long runs = 1000;         // randomized runs of the verification sweeps
  std::vector<long> N_grid{10, 20, 40, 80, 160};
  std::string output;
  std::string solver = "optimal";
  std::string noise = "adversarial";
  unsigned jobs = 1;
  double delta = 0.1;

  // Single-run and per-subcommand settings.
  double d = 1e-6;
  long n = 0;               // 0: take the window rule at d
  std::vector<double> start;
  std::string file;
  std::string op;
  std::string check;
  long N = 10;
  long i = 0;
  long horizon = 100;
  int T = 30;
  std::optional<double> theta_min;
  std::optional<double> theta_max;

  nlohmann::json to_json() const;
  /// FNV-1a of the canonical JSON, leaving out the output path and the job
  /// count, which do not change results.
  std::string hash() const;
};

/// Overlays the keys present in j onto base. Unknown keys are an error.
ExperimentConfig merge_json(ExperimentConfig base, const nlohmann::json& j);

ExperimentConfig load_config_file(const std::filesystem::path& path, ExperimentConfig base = {});

/// Checks names against the catalogue and the grids for sanity.
void validate(const ExperimentConfig& c);

}  // namespace holsh::cli
