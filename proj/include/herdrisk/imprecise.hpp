#pragma once

#include <span>
#include <vector>

#include "herdrisk/infogap.hpp"
#include "herdrisk/loss_core.hpp"

namespace herdrisk {

// Decision rules over the credal set of all densities supported on [0, h].
// Its lower/upper expectations of a continuous function of r are the min/max
// of that function over [0, h], so every rule below reduces to
// one-dimensional optimizations in r.

/// Inner optimization settings: endpoints, a uniform grid, then golden
/// section around an interior incumbent.
struct CredalSearch {
  double h_max = 0.05;
  int grid_points = 64;
  double rel_tol = 1e-6;
};

/// min over r in [0, h] of L(m'|r) - L(m|r). Strictly positive means m
/// dominates m'.
double dominance_margin(const LossModel& model, int m, int m_prime, double h, const CredalSearch& search = {});

/// max over r in [0, h] of L(m'|r) - L(m|r), the upper prevision of the
/// loss difference.
double upper_difference(const LossModel& model, int m, int m_prime, double h, const CredalSearch& search = {});

/// min over m' != m in 0..m_max of upper_difference(m, m', h). Non-negative
/// exactly when no candidate dominates m.
double maximality_score(const LossModel& model, int m, double h, int m_max, const CredalSearch& search = {});

/// { m in 0..m_max : maximality_score(m, h) >= 0 }.
std::vector<int> maximal_set(const LossModel& model, double h, int m_max, const CredalSearch& search = {});

/// Decisions minimizing the worst-case loss M(m, h); ties within 1e-9
/// relative are returned together.
std::vector<int> gamma_minimax(const LossModel& model, double h, int m_max, const InfoGapSettings& settings = {});

struct MaximalityTable {
  std::vector<double> h_values;
  std::vector<int> m_values;
  std::vector<std::vector<double>> scores;  // [m][h], utiles
  std::vector<std::vector<int>> maximal_sets;  // per h
};

/// Scores for every m = 0..m_max at each horizon. Grid evaluations of L(.|r)
/// are shared across decisions.
MaximalityTable maximality_table(const LossModel& model, std::span<const double> h_values, int m_max,
                                 const CredalSearch& search = {});

}  // namespace herdrisk
