#pragma once

#include <span>
#include <vector>

#include "herdrisk/loss_core.hpp"

namespace herdrisk {

/// Numerical knobs for the horizon searches. The worst case over [0, h] is
/// only trusted up to h_max; beyond it L(m|r) turns over and the single
/// endpoint shortcut is invalid anyway.
struct InfoGapSettings {
  double h_max = 0.05;
  double tolerance = 1e-9;  // absolute, in h
  int grid_points = 64;     // inner maximization over [0, h]
  int scan_points = 1000;   // bracketing scan over [0, h_max]
};

struct WorstCaseLoss {
  double value = 0.0;   // M(m, h) = max over r in [0, h] of L(m|r)
  double argmax = 0.0;  // r at which it is attained
  // Set when an interior r beats the endpoint r = h by more than 1e-9
  // relative, i.e. the r = h shortcut would be wrong.
  bool interior_exceeds_endpoint = false;
};

/// Throws DomainError for h < 0 or h > settings.h_max.
WorstCaseLoss worst_case_loss(const LossModel& model, int m, double h, const InfoGapSettings& settings = {});

enum class RobustnessStatus {
  feasible,
  infeasible,  // L(m|0) > L_c: fails even with r known to be 0
  saturated,   // M(m, h_max) <= L_c: robust over the whole trusted range
};

struct RobustnessResult {
  int m = 0;
  double critical_cost = 0.0;
  RobustnessStatus status = RobustnessStatus::infeasible;
  double h_hat = 0.0;  // NaN when infeasible, h_max when saturated

  bool feasible() const { return status != RobustnessStatus::infeasible; }
};

/// Largest h with M(m, h) <= L_c, by bisection on the non-decreasing map
/// h -> M(m, h).
RobustnessResult robustness(const LossModel& model, int m, double critical_cost,
                            const InfoGapSettings& settings = {});

struct InfoGapSolution {
  std::vector<int> argmax;  // every m whose horizon ties the best within tolerance
  double h_hat = 0.0;
  bool saturated = false;

  int m_star() const { return argmax.front(); }
};

/// Robustness-maximizing decision over m = 0..m_max (m_max < 0 means the
/// model's own range). Throws NoSolutionError when every m is infeasible.
InfoGapSolution infogap_optimal(const LossModel& model, double critical_cost, int m_max = -1,
                                const InfoGapSettings& settings = {});

/// Robustness at each critical cost of an ascending grid.
std::vector<RobustnessResult> robustness_curve(const LossModel& model, int m, std::span<const double> critical_costs,
                                               const InfoGapSettings& settings = {});

}  // namespace herdrisk
