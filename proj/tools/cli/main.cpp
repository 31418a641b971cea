#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Herd inspection sampling: Bayesian, info-gap and imprecise analyses", "herdrisk"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  struct Entry {
    const char* name;
    const char* help;
  };
  const Entry entries[] = {
      {"bayes", "Bayes-optimal sample sizes, loss exceedance and prior sensitivity"},
      {"infogap", "Info-gap robust sample sizes and robustness curves"},
      {"maximal", "Maximality scores and maximal sets over horizons"},
      {"bridge", "Theorem checks on the herd model and the counterexamples (JSON)"},
  };
  for (const auto& entry : entries) {
    auto* sub = app.add_subcommand(entry.name, entry.help);
    sub->add_option("--config", config_path, "JSON run configuration");
    sub->add_option("--out", out_dir, "Output directory (overrides output_dir)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return herdrisk::cli::kExitUsage;
  }

  const auto* chosen = app.get_subcommands().front();
  std::optional<std::filesystem::path> config;
  std::optional<std::filesystem::path> out;
  if (!config_path.empty()) config = config_path;
  if (!out_dir.empty()) out = out_dir;
  return herdrisk::cli::run_command(chosen->get_name(), config, out, std::cerr);
}
