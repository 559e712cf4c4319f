#pragma once

#include <ostream>

namespace holsh::cli {

/// Parses the command line (subcommand, optional --config file, flag
/// overrides; flags win over the file) and runs the experiment.
int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace holsh::cli
