#pragma once

// Distance files: plain text, one non-negative decimal per line. Lines whose
// first non-blank character is '#' are comments and blank lines are skipped.
// A single header line reading "distance" is accepted before the first value.
// Parsing is locale-independent.

#include <filesystem>
#include <istream>
#include <string>

#include "hyperchord/analysis.hpp"

namespace hyperchord {

/// Throws ValidationError naming the 1-based line of the first bad entry.
DistanceSample parse_distances(std::istream& in, const std::string& source);

/// Throws ValidationError when the file cannot be opened.
DistanceSample read_distance_file(const std::filesystem::path& path);

}  // namespace hyperchord
