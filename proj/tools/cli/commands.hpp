#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "run_config.hpp"

namespace herdrisk::cli {

// Exit-code contract shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitDomain = 3;
inline constexpr int kExitUsage = 64;

int cmd_bayes(const RunConfig& config, const std::filesystem::path& out_dir);
int cmd_infogap(const RunConfig& config, const std::filesystem::path& out_dir);
int cmd_maximal(const RunConfig& config, const std::filesystem::path& out_dir);
int cmd_bridge(const RunConfig& config, const std::filesystem::path& out_dir);

/// Loads the config (defaults when no path is given), resolves the output
/// directory (`out_override` beats the config's output_dir) and runs the
/// named subcommand. Diagnostics go to `err`.
int run_command(const std::string& name, const std::optional<std::filesystem::path>& config_path,
                const std::optional<std::filesystem::path>& out_override, std::ostream& err);

/// Shortest round-trip decimal form; NaN prints as NA.
std::string format_number(double value);

/// "1..10" for a contiguous run, "1..3;5" otherwise, "none" when empty.
std::string format_set(const int* members, std::size_t count);

}  // namespace herdrisk::cli
