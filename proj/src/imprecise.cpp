#include "herdrisk/imprecise.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "herdrisk/error.hpp"
#include "numeric.hpp"

namespace herdrisk {

namespace {

void check_inputs(const LossModel& model, double h, int m_max, const CredalSearch& search) {
  if (!(h >= 0.0) || h > search.h_max) detail::domain_fail("horizon h outside [0, h_max]");
  if (m_max < 0 || m_max > model.m_max()) detail::domain_fail("m_max outside the model's decision range");
  if (search.grid_points < 2) detail::domain_fail("credal search grid needs at least two points");
}

void check_decision(int m, int m_max) {
  if (m < 0 || m > m_max) detail::domain_fail("decision " + std::to_string(m) + " outside the candidate pool");
}

double upper_difference_impl(const LossModel& model, int m, int m_prime, double h, const CredalSearch& search) {
  if (m == m_prime) return 0.0;
  const auto diff = [&](double r) {
    const auto w = model.binomial_weights(r);
    return detail::compensated_dot(model.conditional_losses(m_prime), w) -
           detail::compensated_dot(model.conditional_losses(m), w);
  };
  return detail::maximize_on_interval(diff, 0.0, h, search.grid_points, search.rel_tol).value;
}

// Same search as maximize_on_interval, but the grid values come from a
// precomputed table; only an interior incumbent triggers fresh evaluations.
double upper_difference_from_grid(const LossModel& model, int m, int m_prime, double h,
                                  const std::vector<std::vector<double>>& grid_losses, const CredalSearch& search) {
  if (m == m_prime) return 0.0;
  const int points = static_cast<int>(grid_losses.size());
  int best = points - 1;
  const auto at = [&](int k) { return grid_losses[k][m_prime] - grid_losses[k][m]; };
  for (int k = points - 2; k >= 0; --k) {
    if (at(k) > at(best)) best = k;
  }
  if (best == 0 || best == points - 1) return at(best);
  return upper_difference_impl(model, m, m_prime, h, search);
}

}  // namespace

double dominance_margin(const LossModel& model, int m, int m_prime, double h, const CredalSearch& search) {
  check_inputs(model, h, model.m_max(), search);
  check_decision(m, model.m_max());
  check_decision(m_prime, model.m_max());
  // min of L(m') - L(m) is minus the max of L(m) - L(m').
  return -upper_difference_impl(model, m_prime, m, h, search);
}

double upper_difference(const LossModel& model, int m, int m_prime, double h, const CredalSearch& search) {
  check_inputs(model, h, model.m_max(), search);
  check_decision(m, model.m_max());
  check_decision(m_prime, model.m_max());
  return upper_difference_impl(model, m, m_prime, h, search);
}

double maximality_score(const LossModel& model, int m, double h, int m_max, const CredalSearch& search) {
  check_inputs(model, h, m_max, search);
  check_decision(m, m_max);
  const double hs[] = {h};
  return maximality_table(model, hs, m_max, search).scores[m][0];
}

std::vector<int> maximal_set(const LossModel& model, double h, int m_max, const CredalSearch& search) {
  check_inputs(model, h, m_max, search);
  const double hs[] = {h};
  return maximality_table(model, hs, m_max, search).maximal_sets[0];
}

std::vector<int> gamma_minimax(const LossModel& model, double h, int m_max, const InfoGapSettings& settings) {
  if (m_max < 0 || m_max > model.m_max()) detail::domain_fail("m_max outside the model's decision range");
  std::vector<double> worst(m_max + 1);
  for (int m = 0; m <= m_max; ++m) worst[m] = worst_case_loss(model, m, h, settings).value;
  const double best = *std::min_element(worst.begin(), worst.end());
  const double slack = 1e-9 * std::max(1.0, std::abs(best));
  std::vector<int> out;
  for (int m = 0; m <= m_max; ++m) {
    if (worst[m] <= best + slack) out.push_back(m);
  }
  return out;
}

MaximalityTable maximality_table(const LossModel& model, std::span<const double> h_values, int m_max,
                                 const CredalSearch& search) {
  for (double h : h_values) check_inputs(model, h, m_max, search);

  MaximalityTable table;
  table.h_values.assign(h_values.begin(), h_values.end());
  for (int m = 0; m <= m_max; ++m) table.m_values.push_back(m);
  table.scores.assign(m_max + 1, std::vector<double>(h_values.size()));
  table.maximal_sets.resize(h_values.size());

  for (std::size_t j = 0; j < h_values.size(); ++j) {
    const double h = h_values[j];
    const int points = h > 0.0 ? search.grid_points : 1;
    std::vector<std::vector<double>> grid_losses(points);
    for (int k = 0; k < points; ++k) {
      const double r = (points == 1) ? 0.0 : (k == points - 1 ? h : h * k / (points - 1));
      grid_losses[k] = model.expected_losses(r);
    }
    for (int m = 0; m <= m_max; ++m) {
      double score = std::numeric_limits<double>::infinity();
      for (int mp = 0; mp <= m_max; ++mp) {
        if (mp == m) continue;
        score = std::min(score, upper_difference_from_grid(model, m, mp, h, grid_losses, search));
      }
      // A lone candidate is trivially undominated.
      if (m_max == 0) score = 0.0;
      table.scores[m][j] = score;
      if (score >= 0.0) table.maximal_sets[j].push_back(m);
    }
  }
  return table;
}

}  // namespace herdrisk
