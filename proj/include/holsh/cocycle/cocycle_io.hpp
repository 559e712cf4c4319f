#pragma once

#include <filesystem>
#include <iosfwd>

#include "holsh/cocycle/cocycle.hpp"

namespace holsh::cocycle {

/// Plain-text cocycle file: a header line "m k0 k1 R", then k1 - k0 + 1 lines
/// each holding one matrix in row-major order. Blank lines and lines starting
/// with '#' are skipped. Malformed input throws PreconditionError.
Cocycle read_cocycle(std::istream& in);
void write_cocycle(std::ostream& out, const Cocycle& c);

Cocycle load_cocycle(const std::filesystem::path& path);
/// Throws Error when the file cannot be written.
void save_cocycle(const std::filesystem::path& path, const Cocycle& c);

}  // namespace holsh::cocycle
