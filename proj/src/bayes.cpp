#include "herdrisk/bayes.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "herdrisk/error.hpp"
#include "numeric.hpp"

namespace herdrisk {

namespace {

double log_beta(double a, double b) { return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b); }

void check_threshold_order(std::span<const double> thresholds) {
  for (std::size_t i = 1; i < thresholds.size(); ++i) {
    if (!(thresholds[i] >= thresholds[i - 1])) detail::domain_fail("thresholds must be ascending");
  }
}

std::vector<double> pass_vector(int m, const ProblemConfig& config) {
  std::vector<double> pass(config.herd_size() + 1);
  for (int d = 0; d <= config.herd_size(); ++d) pass[d] = prob_pass(m, d, config);
  return pass;
}

// Exceedance with the prior-predictive pmf and pass probabilities supplied.
double exceedance_from(std::span<const double> pmf, std::span<const double> pass_by_d, int m,
                       double threshold, const ProblemConfig& config) {
  const int n = config.herd_size();
  const double c = test_cost(m, config);
  if (threshold <= c) return 1.0;
  const bool terminated_exceeds = c + config.termination_cost() >= threshold;
  detail::CompensatedSum acc;
  for (int d = 0; d <= n; ++d) {
    if (pmf[d] == 0.0) continue;
    const double pass = pass_by_d[d];
    double conditional = 0.0;
    if (terminated_exceeds) conditional += 1.0 - pass;
    if (c + config.outbreak_cost(d) >= threshold) conditional += pass;
    acc.add(pmf[d] * conditional);
  }
  return std::clamp(acc.value(), 0.0, 1.0);
}

}  // namespace

BetaPrior::BetaPrior(double alpha, double beta) : alpha_(alpha), beta_(beta) {
  if (!(alpha > 0.0) || !(beta > 0.0) || !std::isfinite(alpha) || !std::isfinite(beta)) {
    detail::domain_fail("Beta prior needs alpha > 0 and beta > 0");
  }
}

BetaPrior BetaPrior::from_mean_concentration(double t, double s) {
  if (!(t > 0.0 && t < 1.0)) detail::domain_fail("prior mean t must lie in (0, 1)");
  if (!(s > 0.0)) detail::domain_fail("prior concentration s must be positive");
  return {s * t, s * (1.0 - t)};
}

double BetaPrior::std_dev() const {
  const double s = concentration();
  return std::sqrt(alpha_ * beta_ / (s * s * (s + 1.0)));
}

BetaPrior prior_from_moments(double t, double sigma) {
  if (!(t > 0.0 && t < 1.0)) detail::domain_fail("prior mean t must lie in (0, 1)");
  if (!(sigma > 0.0)) detail::domain_fail("prior standard deviation must be positive");
  const double variance = sigma * sigma;
  const double bernoulli_variance = t * (1.0 - t);
  if (variance >= bernoulli_variance) {
    throw InfeasibleMomentsError("sigma^2 = " + std::to_string(variance) + " must be below t(1-t) = " +
                                 std::to_string(bernoulli_variance));
  }
  const double s = bernoulli_variance / variance - 1.0;
  return BetaPrior::from_mean_concentration(t, s);
}

std::vector<double> beta_binomial_distribution(const BetaPrior& prior, int n) {
  if (n < 0) detail::domain_fail("n must be non-negative");
  const double a = prior.alpha();
  const double b = prior.beta();
  const double log_norm = log_beta(a, b);
  std::vector<double> pmf(n + 1);
  for (int d = 0; d <= n; ++d) {
    pmf[d] = std::exp(detail::log_choose(n, d) + log_beta(a + d, b + n - d) - log_norm);
  }
  return pmf;
}

double beta_binomial_pmf(int d, const BetaPrior& prior, const ProblemConfig& config) {
  const int n = config.herd_size();
  if (d < 0 || d > n) detail::domain_fail("d outside [0, n]");
  return std::exp(detail::log_choose(n, d) + log_beta(prior.alpha() + d, prior.beta() + n - d) -
                  log_beta(prior.alpha(), prior.beta()));
}

double bayes_expected_loss(int m, const BetaPrior& prior, const ProblemConfig& config) {
  const int n = config.herd_size();
  if (m < 0 || m > n) detail::domain_fail("m outside [0, n]");
  const auto pmf = beta_binomial_distribution(prior, n);
  detail::CompensatedSum acc;
  for (int d = 0; d <= n; ++d) acc.add(pmf[d] * conditional_loss(m, d, config).expected_loss);
  return acc.value();
}

BayesOptimum optimal_m_bayes(const BetaPrior& prior, const ProblemConfig& config, int m_max) {
  const LossModel model(config, m_max);
  const auto pmf = beta_binomial_distribution(prior, config.herd_size());
  BayesOptimum best{0, detail::compensated_dot(model.conditional_losses(0), pmf)};
  for (int m = 1; m <= m_max; ++m) {
    const double loss = detail::compensated_dot(model.conditional_losses(m), pmf);
    if (loss < best.expected_loss) best = {m, loss};
  }
  return best;
}

double loss_exceedance(int m, const BetaPrior& prior, double threshold, const ProblemConfig& config) {
  if (m < 0 || m > config.herd_size()) detail::domain_fail("m outside [0, n]");
  const auto pmf = beta_binomial_distribution(prior, config.herd_size());
  return exceedance_from(pmf, pass_vector(m, config), m, threshold, config);
}

ExceedanceCurve exceedance_curve(int m, const BetaPrior& prior, std::span<const double> thresholds,
                                 const ProblemConfig& config) {
  if (m < 0 || m > config.herd_size()) detail::domain_fail("m outside [0, n]");
  check_threshold_order(thresholds);
  const auto pmf = beta_binomial_distribution(prior, config.herd_size());
  const auto pass = pass_vector(m, config);
  ExceedanceCurve curve;
  curve.thresholds.assign(thresholds.begin(), thresholds.end());
  curve.probabilities.reserve(thresholds.size());
  for (double threshold : thresholds) curve.probabilities.push_back(exceedance_from(pmf, pass, m, threshold, config));
  return curve;
}

SensitivityGrid sensitivity_grid(std::span<const double> t_values, std::span<const double> s_values,
                                 int m, double threshold, const ProblemConfig& config) {
  if (m < 0 || m > config.herd_size()) detail::domain_fail("m outside [0, n]");
  SensitivityGrid grid;
  grid.t_values.assign(t_values.begin(), t_values.end());
  grid.s_values.assign(s_values.begin(), s_values.end());
  grid.cells.resize(s_values.size());
  for (std::size_t i = 0; i < s_values.size(); ++i) {
    grid.cells[i].resize(t_values.size());
    for (std::size_t j = 0; j < t_values.size(); ++j) {
      try {
        const auto prior = BetaPrior::from_mean_concentration(t_values[j], s_values[i]);
        grid.cells[i][j] = loss_exceedance(m, prior, threshold, config);
      } catch (const DomainError&) {
        grid.cells[i][j] = std::nullopt;
      }
    }
  }
  return grid;
}

}  // namespace herdrisk
