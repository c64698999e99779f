#pragma once

#include <iosfwd>

#include "cosfunk/cli/config.hpp"

namespace cosfunk::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitTolerance = 2;

/// Runs a validated config. Library errors propagate.
int run(const ExperimentConfig& config, std::ostream& out);

/// Full command line: parse, run, map errors to exit 1 with a JSON object
/// {"error": kind, "message": ...} on `err`.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cosfunk::cli
