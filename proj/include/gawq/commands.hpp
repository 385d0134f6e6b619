#pragma once

// Subcommands behind the `gawq` executable. Each writes its tables into an
// output directory and logs a short summary.

#include "gawq/config.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace gawq {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int io = 1;
inline constexpr int config = 2;
inline constexpr int numerical = 3;
inline constexpr int boundary = 4;
inline constexpr int verification = 5;
} // namespace exit_code

const std::vector<std::string>& command_names();

// Runs one subcommand; returns 5 only from `verify` when a criterion fails.
// Module errors propagate as exceptions.
int run_subcommand(const std::string& name, const RunConfig& cfg, const std::filesystem::path& out_dir,
                   std::ostream& log);

// Loads the config, runs the subcommand and maps exceptions to exit codes,
// printing the message on err. An empty out_override keeps out.dir.
int dispatch(const std::string& name, const std::filesystem::path& config_path, const std::string& out_override,
             std::ostream& log, std::ostream& err);

} // namespace gawq
