#include "herdrisk/infogap.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "herdrisk/error.hpp"
#include "numeric.hpp"

namespace herdrisk {

namespace {

void check_settings(const InfoGapSettings& s) {
  if (!(s.h_max > 0.0 && s.h_max <= 1.0)) detail::domain_fail("h_max must lie in (0, 1]");
  if (!(s.tolerance > 0.0)) detail::domain_fail("horizon tolerance must be positive");
  if (s.grid_points < 2 || s.scan_points < 2) detail::domain_fail("grids need at least two points");
}

void check_horizon(double h, const InfoGapSettings& s) {
  if (!(h >= 0.0)) detail::domain_fail("horizon h must be non-negative");
  if (h > s.h_max) {
    detail::domain_fail("horizon h = " + std::to_string(h) + " exceeds h_max = " + std::to_string(s.h_max));
  }
}

// Bisection for the largest h in [lo, hi] with worst(h) <= level, given
// worst(lo) <= level < worst(hi) and worst non-decreasing. The last step
// interpolates linearly inside the final bracket.
double bisect_level(const std::function<double(double)>& worst, double lo, double hi, double level,
                    double tolerance) {
  while (hi - lo > tolerance) {
    const double mid = 0.5 * (lo + hi);
    if (worst(mid) <= level) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double w_lo = worst(lo);
  const double w_hi = worst(hi);
  if (!(w_hi > w_lo)) return lo;
  return std::clamp(lo + (level - w_lo) / (w_hi - w_lo) * (hi - lo), lo, hi);
}

}  // namespace

WorstCaseLoss worst_case_loss(const LossModel& model, int m, double h, const InfoGapSettings& settings) {
  check_settings(settings);
  check_horizon(h, settings);
  if (m < 0 || m > model.m_max()) detail::domain_fail("m outside the model's decision range");

  const auto loss = [&](double r) { return model.expected_loss(m, r); };
  const auto best = detail::maximize_on_interval(loss, 0.0, h, settings.grid_points, 1e-6);
  const double endpoint = loss(h);
  WorstCaseLoss out{best.value, best.argmax, false};
  if (endpoint >= out.value) {
    out = {endpoint, h, false};
  } else {
    out.interior_exceeds_endpoint = out.value > endpoint * (1.0 + 1e-9);
  }
  return out;
}

RobustnessResult robustness(const LossModel& model, int m, double critical_cost, const InfoGapSettings& settings) {
  check_settings(settings);
  if (!std::isfinite(critical_cost)) detail::domain_fail("critical cost must be finite");
  if (m < 0 || m > model.m_max()) detail::domain_fail("m outside the model's decision range");

  RobustnessResult result{m, critical_cost, RobustnessStatus::infeasible,
                          std::numeric_limits<double>::quiet_NaN()};
  const auto loss = [&](double r) { return model.expected_loss(m, r); };
  if (loss(0.0) > critical_cost) return result;

  const auto full_worst = [&](double h) { return worst_case_loss(model, m, h, settings).value; };
  if (full_worst(settings.h_max) <= critical_cost) {
    result.status = RobustnessStatus::saturated;
    result.h_hat = settings.h_max;
    return result;
  }
  result.status = RobustnessStatus::feasible;

  // Bracket the first upward crossing on a fixed scan, then bisect the
  // running maximum inside that cell only.
  const double step = settings.h_max / settings.scan_points;
  double lo = 0.0;
  double hi = settings.h_max;
  bool bracketed = false;
  for (int k = 1; k <= settings.scan_points; ++k) {
    const double r = (k == settings.scan_points) ? settings.h_max : k * step;
    if (loss(r) > critical_cost) {
      lo = (k - 1) * step;
      hi = r;
      bracketed = true;
      break;
    }
  }
  double prefix = bracketed ? full_worst(lo) : critical_cost + 1.0;
  if (!bracketed || prefix > critical_cost) {
    // The crossing hides between scan points; fall back to the full map.
    hi = bracketed ? lo : settings.h_max;
    lo = 0.0;
    result.h_hat = bisect_level(full_worst, lo, hi, critical_cost, settings.tolerance);
    return result;
  }
  const double bracket_lo = lo;
  const auto local_worst = [&](double h) {
    const auto local = detail::maximize_on_interval(loss, bracket_lo, h, 5, 1e-3);
    return std::max(prefix, local.value);
  };
  result.h_hat = bisect_level(local_worst, lo, hi, critical_cost, settings.tolerance);
  return result;
}

InfoGapSolution infogap_optimal(const LossModel& model, double critical_cost, int m_max,
                                const InfoGapSettings& settings) {
  if (m_max < 0) m_max = model.m_max();
  if (m_max > model.m_max()) detail::domain_fail("m_max exceeds the model's decision range");

  std::vector<RobustnessResult> results;
  results.reserve(m_max + 1);
  double best = -1.0;
  for (int m = 0; m <= m_max; ++m) {
    results.push_back(robustness(model, m, critical_cost, settings));
    if (results.back().feasible()) best = std::max(best, results.back().h_hat);
  }
  if (best < 0.0) {
    throw NoSolutionError("every decision is infeasible at critical cost " + std::to_string(critical_cost));
  }
  InfoGapSolution solution;
  solution.h_hat = best;
  for (const auto& r : results) {
    if (r.feasible() && r.h_hat >= best - settings.tolerance) {
      solution.argmax.push_back(r.m);
      solution.saturated = solution.saturated || r.status == RobustnessStatus::saturated;
    }
  }
  return solution;
}

std::vector<RobustnessResult> robustness_curve(const LossModel& model, int m, std::span<const double> critical_costs,
                                               const InfoGapSettings& settings) {
  if (critical_costs.empty()) detail::domain_fail("critical cost grid is empty");
  for (std::size_t i = 1; i < critical_costs.size(); ++i) {
    if (!(critical_costs[i] >= critical_costs[i - 1])) detail::domain_fail("critical costs must be ascending");
  }
  std::vector<RobustnessResult> curve;
  curve.reserve(critical_costs.size());
  for (double lc : critical_costs) curve.push_back(robustness(model, m, lc, settings));
  return curve;
}

}  // namespace herdrisk
