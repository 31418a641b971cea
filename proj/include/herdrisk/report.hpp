#pragma once

#include <memory>
#include <span>

#include <json.hpp>

#include "herdrisk/bridge.hpp"

namespace herdrisk {

nlohmann::json to_json(const Theorem1Verdict& verdict, std::span<const PrevisionCurve> curves);
nlohmann::json to_json(const Theorem2Verdict& verdict, std::span<const PrevisionCurve> curves);

/// Theorem checks for the herd model at each horizon plus both
/// counterexamples. Layout is documented in docs/theorem_report.schema.json.
nlohmann::json theorem_report(std::shared_ptr<const LossModel> model, std::span<const double> horizons,
                              const InfoGapSettings& settings = {}, const CredalSearch& search = {},
                              int h_prime_interior = 20);

}  // namespace herdrisk
