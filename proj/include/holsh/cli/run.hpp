#pragma once

#include <ostream>

#include "holsh/cli/config.hpp"

namespace holsh::cli {

/// Runs one configured experiment, printing a key=value report to `out` and
/// diagnostics to `err`. CSV output goes to config.output when it is set.
/// Returns one of the ExitCode values.
int run(const ExperimentConfig& config, std::ostream& out, std::ostream& err);

}  // namespace holsh::cli
