#pragma once

#include <iosfwd>

#include <json.hpp>

#include "burstkit/config.hpp"

namespace burstkit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitValidation = 3;
inline constexpr int kExitNumerical = 4;

struct CommandResult {
    nlohmann::json summary;
    bool ok = true;  // false when a numerical tolerance check failed
};

// Runs the command named in config.command, writing its declared outputs
// under config.out_dir. Throws ValidationError / NumericalError.
CommandResult execute(const ExperimentConfig& config);

// Full entry point: parses argv, runs, prints the JSON summary to `out`.
// Returns 0, or 2 (usage), 3 (validation) or 4 (numerical failure).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace burstkit::cli
