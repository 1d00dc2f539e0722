#pragma once

#include <ostream>
#include <string>

#include "qswitch/config.hpp"

namespace qswitch {

enum ExitCode : int { exit_ok = 0, exit_failure = 1, exit_config = 2, exit_numerical = 3, exit_io = 4 };

struct RunContext {
    std::string out_dir = ".";
    int threads = 1;
};

/// Executes one resolved spec: writes the command's CSV plus manifest.txt
/// into ctx.out_dir and a human summary to `log`. Errors become one
/// "error: ..." line on `err` and the matching exit code.
int run(const RunSpec& spec, const RunContext& ctx, std::ostream& log, std::ostream& err);

/// 1/J in seconds for SI parameters, and the commonly quoted value.
inline constexpr double quoted_outcoupling_time = 1e-9;

}  // namespace qswitch
