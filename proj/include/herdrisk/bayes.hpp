#pragma once

#include <optional>
#include <span>
#include <vector>

#include "herdrisk/loss_core.hpp"

namespace herdrisk {

/// Beta(alpha, beta) prior over the per-animal infection probability r.
/// Also readable in mean/concentration form: t = alpha/(alpha+beta),
/// s = alpha+beta.
class BetaPrior {
 public:
  /// Throws DomainError unless alpha > 0 and beta > 0.
  BetaPrior(double alpha, double beta);

  /// alpha = s*t, beta = s*(1-t).
  static BetaPrior from_mean_concentration(double t, double s);

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  double mean() const { return alpha_ / (alpha_ + beta_); }
  double concentration() const { return alpha_ + beta_; }
  double std_dev() const;

 private:
  double alpha_;
  double beta_;
};

/// Prior with mean t and standard deviation sigma:
/// s = t(1-t)/sigma^2 - 1. Throws InfeasibleMomentsError when
/// sigma^2 >= t(1-t), DomainError when t is outside (0,1) or sigma <= 0.
BetaPrior prior_from_moments(double t, double sigma);

/// Prior-predictive Beta-binomial probability of d diseased among n.
double beta_binomial_pmf(int d, const BetaPrior& prior, const ProblemConfig& config);
/// The whole pmf over d = 0..n.
std::vector<double> beta_binomial_distribution(const BetaPrior& prior, int n);

/// E(L | alpha, beta) for testing m animals.
double bayes_expected_loss(int m, const BetaPrior& prior, const ProblemConfig& config);

struct BayesOptimum {
  int m_star = 0;
  double expected_loss = 0.0;
};

/// Exhaustive scan over m = 0..m_max; ties go to the smallest m.
BayesOptimum optimal_m_bayes(const BetaPrior& prior, const ProblemConfig& config, int m_max = 30);

/// Pr(L >= threshold) for the realized loss under the prior predictive.
/// Realized losses are c(m) (healthy herd passes), c(m)+t(n) (terminated)
/// and c(m)+a(d) (infected herd passes).
double loss_exceedance(int m, const BetaPrior& prior, double threshold, const ProblemConfig& config);

struct ExceedanceCurve {
  std::vector<double> thresholds;     // ascending
  std::vector<double> probabilities;  // Pr(L >= threshold)
};

ExceedanceCurve exceedance_curve(int m, const BetaPrior& prior, std::span<const double> thresholds,
                                 const ProblemConfig& config);

/// Exceedance probabilities over a (t, s) grid; rows are s, columns are t.
/// Cells whose (t, s) does not give a valid Beta prior are left empty.
struct SensitivityGrid {
  std::vector<double> t_values;
  std::vector<double> s_values;
  std::vector<std::vector<std::optional<double>>> cells;  // [s][t]
};

SensitivityGrid sensitivity_grid(std::span<const double> t_values, std::span<const double> s_values,
                                 int m, double threshold, const ProblemConfig& config);

}  // namespace herdrisk
