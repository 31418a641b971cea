#include "commands.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <stdexcept>
#include <vector>

#include "herdrisk/herdrisk.h"

namespace herdrisk::cli {

namespace {

namespace fs = std::filesystem;

/// Failing C API call; carries the status for exit-code mapping.
class ApiError : public std::runtime_error {
 public:
  ApiError(hr_status status, const std::string& what) : std::runtime_error(what), status_(status) {}
  hr_status status() const { return status_; }

 private:
  hr_status status_;
};

void check(hr_status status, const char* call) {
  if (status != HR_OK) {
    throw ApiError(status, std::string(call) + ": " + hr_status_string(status) + ": " + hr_last_error());
  }
}

struct ModelDeleter {
  void operator()(hr_model* model) const { hr_model_destroy(model); }
};
using ModelHandle = std::unique_ptr<hr_model, ModelDeleter>;

ModelHandle open_model(const RunConfig& config) {
  hr_settings settings;
  hr_settings_default(&settings);
  settings.m_max = config.grids.m_max;
  settings.h_max = config.grids.h_max;
  settings.tolerance = config.grids.bisection_tolerance;
  settings.grid_points = config.grids.r_grid_points;
  hr_model* raw = nullptr;
  check(hr_model_create(&config.problem, &settings, &raw), "hr_model_create");
  return ModelHandle(raw);
}

class CsvFile {
 public:
  explicit CsvFile(const fs::path& path) : path_(path), out_(path, std::ios::binary) {
    if (!out_) throw std::runtime_error("cannot write " + path.string());
  }
  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i > 0) out_ << ',';
      out_ << cells[i];
    }
    out_ << '\n';
  }
  ~CsvFile() { out_.flush(); }

 private:
  fs::path path_;
  std::ofstream out_;
};

std::string fixed(double value, int decimals) {
  if (std::isnan(value)) return "NA";
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.*f", decimals, value);
  return buffer;
}

std::vector<double> maximality_horizons(const RunConfig& config, hr_model* model) {
  if (config.maximality_horizons) return *config.maximality_horizons;
  std::vector<double> horizons;
  std::vector<int32_t> argmax(config.grids.m_max + 1);
  for (double lc : config.infogap_costs) {
    size_t count = 0;
    double h_hat = 0.0;
    const hr_status status =
        hr_infogap_optimal(model, lc, argmax.data(), argmax.size(), &count, &h_hat, nullptr);
    if (status == HR_ERR_NO_SOLUTION) continue;
    check(status, "hr_infogap_optimal");
    horizons.push_back(h_hat);
  }
  return horizons;
}

template <class F>
int guarded_command(F&& body) {
  try {
    body();
    return kExitOk;
  } catch (const ApiError& e) {
    std::cerr << "error: " << e.what() << '\n';
    const bool domain = e.status() == HR_ERR_DOMAIN || e.status() == HR_ERR_INFEASIBLE_MOMENTS ||
                        e.status() == HR_ERR_NO_SOLUTION;
    return domain ? kExitDomain : kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace

std::string format_number(double value) {
  if (std::isnan(value)) return "NA";
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof buffer, value);
  return std::string(buffer, result.ptr);
}

std::string format_set(const int* members, std::size_t count) {
  if (count == 0) return "none";
  std::string out;
  std::size_t i = 0;
  while (i < count) {
    std::size_t j = i;
    while (j + 1 < count && members[j + 1] == members[j] + 1) ++j;
    if (!out.empty()) out += ';';
    out += std::to_string(members[i]);
    if (j > i) out += ".." + std::to_string(members[j]);
    i = j + 1;
  }
  return out;
}

int cmd_bayes(const RunConfig& config, const fs::path& out_dir) {
  return guarded_command([&] {
    const auto model = open_model(config);
    fs::create_directories(out_dir);

    CsvFile table(out_dir / "bayes_table.csv");
    table.row({"t", "s", "sigma", "alpha", "beta", "m_star", "expected_loss_1e6", "expected_loss_1e6_rounded"});
    for (const auto& moments : config.bayes_priors) {
      hr_beta_prior prior{};
      check(hr_prior_from_moments(moments.t, moments.sigma, &prior), "hr_prior_from_moments");
      int32_t m_star = 0;
      double loss = 0.0;
      check(hr_bayes_optimal(model.get(), prior, config.grids.m_max, &m_star, &loss), "hr_bayes_optimal");
      const double s = prior.alpha + prior.beta;
      const double sigma = std::sqrt(prior.alpha * prior.beta / (s * s * (s + 1.0)));
      table.row({format_number(moments.t), format_number(s), format_number(sigma), format_number(prior.alpha),
                 format_number(prior.beta), std::to_string(m_star), format_number(loss / 1e6),
                 fixed(loss / 1e6, 3)});
    }

    const auto& ex = config.exceedance;
    hr_beta_prior prior{};
    check(hr_prior_from_moments(ex.prior.t, ex.prior.sigma, &prior), "hr_prior_from_moments");
    std::vector<double> probabilities(ex.thresholds.size());
    check(hr_exceedance_curve(model.get(), prior, ex.m, ex.thresholds.data(), ex.thresholds.size(),
                              probabilities.data()),
          "hr_exceedance_curve");
    CsvFile exceedance(out_dir / "exceedance.csv");
    exceedance.row({"m", "threshold", "probability"});
    for (std::size_t i = 0; i < ex.thresholds.size(); ++i) {
      exceedance.row({std::to_string(ex.m), format_number(ex.thresholds[i]), format_number(probabilities[i])});
    }

    const auto& sens = config.sensitivity;
    std::vector<double> cells(sens.t_values.size() * sens.s_values.size());
    check(hr_sensitivity_grid(model.get(), sens.t_values.data(), sens.t_values.size(), sens.s_values.data(),
                              sens.s_values.size(), sens.m, sens.threshold, cells.data()),
          "hr_sensitivity_grid");
    CsvFile sensitivity(out_dir / "sensitivity.csv");
    std::vector<std::string> header{"s"};
    for (double t : sens.t_values) header.push_back("t=" + format_number(t));
    sensitivity.row(header);
    for (std::size_t i = 0; i < sens.s_values.size(); ++i) {
      std::vector<std::string> row{format_number(sens.s_values[i])};
      for (std::size_t j = 0; j < sens.t_values.size(); ++j) {
        row.push_back(format_number(cells[i * sens.t_values.size() + j]));
      }
      sensitivity.row(row);
    }
  });
}

int cmd_infogap(const RunConfig& config, const fs::path& out_dir) {
  return guarded_command([&] {
    const auto model = open_model(config);
    fs::create_directories(out_dir);

    CsvFile table(out_dir / "infogap_table.csv");
    table.row({"L_c", "m_star", "h_hat", "h_hat_1e3_rounded", "argmax", "status"});
    std::vector<int32_t> argmax(config.grids.m_max + 1);
    for (double lc : config.infogap_costs) {
      size_t count = 0;
      double h_hat = 0.0;
      int32_t saturated = 0;
      const hr_status status =
          hr_infogap_optimal(model.get(), lc, argmax.data(), argmax.size(), &count, &h_hat, &saturated);
      if (status == HR_ERR_NO_SOLUTION) {
        table.row({format_number(lc), "NA", "NA", "NA", "none", "infeasible"});
        continue;
      }
      check(status, "hr_infogap_optimal");
      table.row({format_number(lc), std::to_string(argmax[0]), format_number(h_hat), fixed(h_hat * 1e3, 3),
                 format_set(argmax.data(), count), saturated ? "saturated" : "feasible"});
    }

    const auto& curves = config.robustness_curves;
    CsvFile out(out_dir / "robustness_curves.csv");
    out.row({"m", "L_c", "h_hat", "feasible", "saturated"});
    for (int m : curves.m_values) {
      std::vector<hr_robustness_point> points(curves.critical_costs.size());
      if (!points.empty()) {
        check(hr_robustness_curve(model.get(), m, curves.critical_costs.data(), points.size(), points.data()),
              "hr_robustness_curve");
      }
      for (const auto& p : points) {
        out.row({std::to_string(m), format_number(p.critical_cost), format_number(p.h_hat),
                 p.status == HR_ROBUST_INFEASIBLE ? "0" : "1", p.status == HR_ROBUST_SATURATED ? "1" : "0"});
      }
    }
  });
}

int cmd_maximal(const RunConfig& config, const fs::path& out_dir) {
  return guarded_command([&] {
    const auto model = open_model(config);
    fs::create_directories(out_dir);

    const auto horizons = maximality_horizons(config, model.get());
    const std::size_t rows = config.grids.m_max + 1;
    std::vector<double> scores(rows * horizons.size());
    if (!horizons.empty()) {
      check(hr_maximality_table(model.get(), horizons.data(), horizons.size(), scores.data()),
            "hr_maximality_table");
    }

    CsvFile full(out_dir / "maximality.csv");
    CsvFile rounded(out_dir / "maximality_rounded.csv");
    std::vector<std::string> header{"m"};
    std::vector<std::string> rounded_header{"m"};
    for (double h : horizons) {
      header.push_back("h=" + format_number(h));
      rounded_header.push_back("h_1e3=" + fixed(h * 1e3, 3));
    }
    full.row(header);
    rounded.row(rounded_header);
    for (std::size_t m = 0; m < rows; ++m) {
      std::vector<std::string> row{std::to_string(m)};
      std::vector<std::string> rounded_row{std::to_string(m)};
      for (std::size_t j = 0; j < horizons.size(); ++j) {
        const double score = scores[m * horizons.size() + j] / 1e3;
        row.push_back(format_number(score));
        rounded_row.push_back(fixed(score, 1));
      }
      full.row(row);
      rounded.row(rounded_row);
    }

    std::vector<std::string> summary{"maximal_set"};
    for (std::size_t j = 0; j < horizons.size(); ++j) {
      std::vector<int> members;
      for (std::size_t m = 0; m < rows; ++m) {
        if (scores[m * horizons.size() + j] >= 0.0) members.push_back(static_cast<int>(m));
      }
      summary.push_back(format_set(members.data(), members.size()));
    }
    full.row(summary);
    rounded.row(summary);
  });
}

int cmd_bridge(const RunConfig& config, const fs::path& out_dir) {
  return guarded_command([&] {
    const auto model = open_model(config);
    fs::create_directories(out_dir);

    const auto horizons = maximality_horizons(config, model.get());
    char* json = nullptr;
    check(hr_theorem_report_json(model.get(), horizons.data(), horizons.size(), config.grids.h_prime_points, &json),
          "hr_theorem_report_json");
    const std::unique_ptr<char, void (*)(char*)> owned(json, hr_string_free);
    std::ofstream out(out_dir / "theorem_report.json", std::ios::binary);
    if (!out) throw std::runtime_error("cannot write theorem_report.json");
    out << owned.get();
  });
}

int run_command(const std::string& name, const std::optional<fs::path>& config_path,
                const std::optional<fs::path>& out_override, std::ostream& err) {
  RunConfig config;
  try {
    config = config_path ? load_run_config(*config_path) : default_run_config();
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
  const fs::path out_dir = out_override.value_or(fs::path(config.output_dir));
  if (name == "bayes") return cmd_bayes(config, out_dir);
  if (name == "infogap") return cmd_infogap(config, out_dir);
  if (name == "maximal") return cmd_maximal(config, out_dir);
  if (name == "bridge") return cmd_bridge(config, out_dir);
  err << "unknown subcommand '" << name << "'\n";
  return kExitUsage;
}

}  // namespace herdrisk::cli
