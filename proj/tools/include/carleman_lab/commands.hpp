#pragma once

#include <ostream>
#include <string_view>
#include <vector>

#include "carleman_lab/config.hpp"

namespace clab::app {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kUsageOrIo = 2 };

/// verify-symbols, subelliptic, carleman-sweep, solve-forward, ucp-demo, all.
const std::vector<std::string_view>& command_names();

/// Runs one suite (or all of them), writing artifacts under config.out/<command>/.
/// Returns kOk when every check passes and kCheckFailed otherwise. Library
/// errors propagate to the caller.
int run_command(std::string_view command, const RunConfig& config, std::ostream& log);

/// Full command-line entry point: argument parsing, dispatch and the mapping of
/// errors onto exit codes.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace clab::app
