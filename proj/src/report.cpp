#include "herdrisk/report.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace herdrisk {

namespace {

using nlohmann::json;

json labels(const DecisionSet& set, std::span<const PrevisionCurve> curves) {
  json out = json::array();
  for (std::size_t i : set) out.push_back(curves[i].label());
  return out;
}

}  // namespace

json to_json(const Theorem1Verdict& v, std::span<const PrevisionCurve> curves) {
  const bool inclusion =
      std::includes(v.gamma_minimax.begin(), v.gamma_minimax.end(), v.infogap.begin(), v.infogap.end());
  return {
      {"theorem", 1},
      {"h", v.h},
      {"critical_cost", v.critical_cost},
      {"lstar", v.lstar_value},
      {"conditions",
       {{"right_derivative_positive", v.derivative.positive},
        {"level_matches_lstar", v.level_matches},
        {"hold", v.conditions_hold}}},
      {"sets", {{"infogap", labels(v.infogap, curves)}, {"gamma_minimax", labels(v.gamma_minimax, curves)}}},
      {"inclusion", inclusion},
      {"equality", v.sets_equal},
      {"consistent", v.consistent()},
      {"diagnostics",
       {{"probe_steps", v.derivative.steps},
        {"derivative_estimates", v.derivative.estimates},
        {"estimates_agree", v.derivative.estimates_agree},
        {"monotone_trend", v.derivative.monotone_trend}}},
  };
}

json to_json(const Theorem2Verdict& v, std::span<const PrevisionCurve> curves) {
  return {
      {"theorem", 2},
      {"h", v.h},
      {"conditions", {{"hypothesis_holds", v.hypothesis_holds}, {"failed_h_primes", v.failed_h_primes}}},
      {"sets", {{"infogap_union", labels(v.infogap_union, curves)}, {"maximal", labels(v.maximal, curves)}}},
      {"inclusion", v.inclusion},
      {"equality", v.equality},
      {"diagnostics", {{"h_primes", v.h_primes}}},
  };
}

json theorem_report(std::shared_ptr<const LossModel> model, std::span<const double> horizons,
                    const InfoGapSettings& settings, const CredalSearch& search, int h_prime_interior) {
  const auto curves = herd_curves(model, settings);
  const auto oracle = herd_difference_oracle(model, search);

  json theorem1 = json::array();
  json theorem2 = json::array();
  bool all_hold = true;
  for (double h : horizons) {
    const auto v1 = theorem1_check(curves, h);
    const auto grid = default_h_prime_grid(h, h_prime_interior);
    const auto v2 = theorem2_check(curves, oracle, h, grid);
    all_hold = all_hold && v1.conditions_hold && v1.sets_equal && v2.inclusion;
    theorem1.push_back(to_json(v1, curves));
    theorem2.push_back(to_json(v2, curves));
  }

  const auto cx1 = make_counterexample(1);
  const auto cx2 = make_counterexample(2);
  return {
      {"schema_version", 1},
      {"herd_model", {{"theorem1", theorem1}, {"theorem2", theorem2}, {"all_verdicts_hold", all_hold}}},
      // L_c = 3 is never L*(h) for any h: the discontinuity of L* at h = 1 skips it.
      {"counterexample_1", {{"theorem1", to_json(theorem1_check(cx1, 1.0, 3.0), cx1)}}},
      {"counterexample_2", {{"theorem1", to_json(theorem1_check(cx2, 1.0), cx2)}}},
  };
}

}  // namespace herdrisk
