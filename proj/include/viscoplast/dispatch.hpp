#pragma once

#include "viscoplast/config.hpp"

namespace viscoplast::cli {

/// Exit codes: 0 success, 1 internal error, 2 usage, 3 configuration error,
/// 4 numerical failure (non-convergence, blowup, diverged fixed point).
enum ExitCode : int {
    kExitOk = 0,
    kExitInternal = 1,
    kExitUsage = 2,
    kExitConfig = 3,
    kExitNumerical = 4,
};

/// Runs one subcommand; writes manifest.json plus the subcommand's artifacts
/// under cfg.out_dir. Identical configs and seeds produce byte-identical data
/// files.
int dispatch(const RunConfig& cfg);

} // namespace viscoplast::cli
