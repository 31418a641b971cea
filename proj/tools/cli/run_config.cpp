#include "run_config.hpp"

#include <fstream>
#include <set>

namespace herdrisk::cli {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& object, const std::set<std::string>& allowed, const std::string& where) {
  if (!object.is_object()) throw ConfigError(where + " must be a JSON object");
  for (const auto& [key, value] : object.items()) {
    if (!allowed.contains(key)) throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

template <class T>
void read(const json& object, const char* key, T& target, const std::string& where) {
  if (!object.contains(key)) return;
  try {
    target = object.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(where + "." + key + ": " + e.what());
  }
}

PriorMoments read_prior(const json& node, const std::string& where) {
  reject_unknown_keys(node, {"t", "sigma"}, where);
  if (!node.contains("t") || !node.contains("sigma")) throw ConfigError(where + " needs both t and sigma");
  PriorMoments prior;
  read(node, "t", prior.t, where);
  read(node, "sigma", prior.sigma, where);
  return prior;
}

std::vector<double> arange(double lo, double hi, double step) {
  std::vector<double> out;
  const int count = static_cast<int>((hi - lo) / step + 0.5);
  for (int k = 0; k <= count; ++k) out.push_back(lo + step * k);
  return out;
}

}  // namespace

RunConfig default_run_config() {
  RunConfig config;
  hr_problem_params_default(&config.problem);
  config.bayes_priors = {{0.0002, 0.001}, {0.0004, 0.001}, {0.0008, 0.001}, {0.0016, 0.001}};
  config.infogap_costs = {0.5e6, 1.0e6, 1.5e6, 2.0e6, 2.5e6, 3.0e6, 3.5e6, 4.0e6};

  // Exceedance thresholds every 1000 utiles up to 1.1e6, plus the outbreak
  // atom c(m) + a and a point just past it.
  config.exceedance.thresholds = arange(0.0, 1.1e6, 1000.0);
  const double m = config.exceedance.m;
  const double outbreak_atom = config.problem.c0 + config.problem.c1 * m + config.problem.c2 * m * m + config.problem.a;
  config.exceedance.thresholds.push_back(outbreak_atom);
  config.exceedance.thresholds.push_back(outbreak_atom + 1000.0);

  config.sensitivity.t_values = {0.0002, 0.0004, 0.0008, 0.0016, 0.0032};
  config.sensitivity.s_values = {200.0, 400.0, 800.0, 1600.0, 3200.0};

  config.robustness_curves.m_values = {1, 15, 30};
  config.robustness_curves.critical_costs = arange(0.0, 7.1e6, 0.05e6);
  return config;
}

RunConfig parse_run_config(const json& doc) {
  RunConfig config = default_run_config();
  reject_unknown_keys(doc,
                      {"problem", "bayes_priors", "infogap_costs", "maximality_horizons", "grids", "exceedance",
                       "sensitivity", "robustness_curves", "output_dir"},
                      "config");

  if (doc.contains("problem")) {
    const auto& p = doc.at("problem");
    reject_unknown_keys(p, {"n", "p", "q", "cost", "a", "t_per_animal"}, "problem");
    read(p, "n", config.problem.n, "problem");
    read(p, "p", config.problem.p, "problem");
    read(p, "q", config.problem.q, "problem");
    read(p, "a", config.problem.a, "problem");
    read(p, "t_per_animal", config.problem.t_per_animal, "problem");
    if (p.contains("cost")) {
      const auto& c = p.at("cost");
      reject_unknown_keys(c, {"c0", "c1", "c2"}, "problem.cost");
      read(c, "c0", config.problem.c0, "problem.cost");
      read(c, "c1", config.problem.c1, "problem.cost");
      read(c, "c2", config.problem.c2, "problem.cost");
    }
  }

  if (doc.contains("bayes_priors")) {
    const auto& list = doc.at("bayes_priors");
    if (!list.is_array()) throw ConfigError("bayes_priors must be an array");
    config.bayes_priors.clear();
    for (std::size_t i = 0; i < list.size(); ++i) {
      config.bayes_priors.push_back(read_prior(list[i], "bayes_priors[" + std::to_string(i) + "]"));
    }
  }
  read(doc, "infogap_costs", config.infogap_costs, "config");
  if (doc.contains("maximality_horizons")) {
    std::vector<double> horizons;
    read(doc, "maximality_horizons", horizons, "config");
    config.maximality_horizons = std::move(horizons);
  }

  if (doc.contains("grids")) {
    const auto& g = doc.at("grids");
    reject_unknown_keys(g, {"m_max", "r_grid_points", "bisection_tolerance", "h_max", "h_prime_points"}, "grids");
    read(g, "m_max", config.grids.m_max, "grids");
    read(g, "r_grid_points", config.grids.r_grid_points, "grids");
    read(g, "bisection_tolerance", config.grids.bisection_tolerance, "grids");
    read(g, "h_max", config.grids.h_max, "grids");
    read(g, "h_prime_points", config.grids.h_prime_points, "grids");
  }

  if (doc.contains("exceedance")) {
    const auto& e = doc.at("exceedance");
    reject_unknown_keys(e, {"m", "prior", "thresholds"}, "exceedance");
    read(e, "m", config.exceedance.m, "exceedance");
    if (e.contains("prior")) config.exceedance.prior = read_prior(e.at("prior"), "exceedance.prior");
    read(e, "thresholds", config.exceedance.thresholds, "exceedance");
  }

  if (doc.contains("sensitivity")) {
    const auto& s = doc.at("sensitivity");
    reject_unknown_keys(s, {"t_values", "s_values", "m", "threshold"}, "sensitivity");
    read(s, "t_values", config.sensitivity.t_values, "sensitivity");
    read(s, "s_values", config.sensitivity.s_values, "sensitivity");
    read(s, "m", config.sensitivity.m, "sensitivity");
    read(s, "threshold", config.sensitivity.threshold, "sensitivity");
  }

  if (doc.contains("robustness_curves")) {
    const auto& r = doc.at("robustness_curves");
    reject_unknown_keys(r, {"m_values", "critical_costs"}, "robustness_curves");
    read(r, "m_values", config.robustness_curves.m_values, "robustness_curves");
    read(r, "critical_costs", config.robustness_curves.critical_costs, "robustness_curves");
  }

  read(doc, "output_dir", config.output_dir, "config");
  return config;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("malformed JSON in " + path.string() + ": " + e.what());
  }
  return parse_run_config(doc);
}

}  // namespace herdrisk::cli
