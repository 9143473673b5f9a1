#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "fracnoether/config.hpp"

namespace fracnoether {

enum ExitCode : int { exit_ok = 0, exit_config = 1, exit_numerical = 2, exit_check = 3 };

/// Worker count for alpha sweeps: FRACNOETHER_THREADS if set (>= 1), else the
/// hardware concurrency. Throws ConfigError on a malformed value.
std::size_t sweep_threads();

/// Each command writes its files under `out` and returns an exit code.
/// Library exceptions propagate; `run_command` maps them to exit codes.
int cmd_solve(const RunConfig& cfg, const std::filesystem::path& out, std::ostream& log);
int cmd_noether(const RunConfig& cfg, const std::filesystem::path& out, std::ostream& log);
int cmd_check(const RunConfig& cfg, const std::filesystem::path& out, std::ostream& log);

/// Loads the config, picks the output directory (`out_override` wins over the
/// `outputs` key) and dispatches. Never returns anything outside 0..3.
int run_command(const std::string& command, const std::string& config_path, const std::string& out_override,
                std::ostream& log);

}  // namespace fracnoether
