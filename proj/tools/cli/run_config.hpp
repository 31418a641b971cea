#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "herdrisk/herdrisk.h"

namespace herdrisk::cli {

/// Malformed or ill-typed configuration document (exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PriorMoments {
  double t = 0.0;
  double sigma = 0.0;
};

struct GridSettings {
  int m_max = 30;
  int r_grid_points = 64;
  double bisection_tolerance = 1e-9;
  double h_max = 0.05;
  int h_prime_points = 20;  // interior points of the theorem-2 grid
};

struct ExceedanceSettings {
  int m = 10;
  PriorMoments prior{0.0016, 0.001};
  std::vector<double> thresholds;
};

struct SensitivitySettings {
  std::vector<double> t_values;
  std::vector<double> s_values;
  int m = 10;
  double threshold = 182000.0;
};

struct CurveSettings {
  std::vector<int> m_values;
  std::vector<double> critical_costs;
};

/// Everything one CLI run needs. Each field has a default, so an empty JSON
/// object reproduces the reference tables.
struct RunConfig {
  hr_problem_params problem{};
  std::vector<PriorMoments> bayes_priors;
  std::vector<double> infogap_costs;
  // Empty means: use the info-gap horizons at infogap_costs.
  std::optional<std::vector<double>> maximality_horizons;
  GridSettings grids;
  ExceedanceSettings exceedance;
  SensitivitySettings sensitivity;
  CurveSettings robustness_curves;
  std::string output_dir = "herdrisk-out";
};

RunConfig default_run_config();
RunConfig parse_run_config(const nlohmann::json& document);
RunConfig load_run_config(const std::filesystem::path& path);

}  // namespace herdrisk::cli
