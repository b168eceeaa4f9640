#pragma once

// Executes one configured run end to end: load and check the config,
// produce the data, and write every output file atomically.

#include <optional>
#include <string>
#include <vector>

#include "budgetsim/config.hpp"

namespace budgetsim::cli {

struct RunRequest {
    std::optional<RunKind> kind;         ///< from the subcommand, when one was given
    std::string config_path;
    std::string out_override;            ///< --out; empty keeps the config's path
    std::vector<std::string> overrides;  ///< --set entries, applied in order
};

struct RunResult {
    int exit_code = 0;                 ///< 0 ok, 1 config error, 2 runtime error
    std::string diagnostic;            ///< empty on success
    std::vector<std::string> outputs;  ///< paths written, in write order
};

/// Never throws; every failure is folded into the exit code and
/// diagnostic. Output files are written through a temp file and rename,
/// so a failed run leaves no partial output behind.
[[nodiscard]] RunResult run(const RunRequest& request);

}  // namespace budgetsim::cli
