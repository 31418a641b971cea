#include "herdrisk/loss_core.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "herdrisk/error.hpp"
#include "numeric.hpp"

namespace herdrisk {

namespace {

bool is_probability(double x) { return x >= 0.0 && x <= 1.0; }

void check_count(int value, int upper, const char* name) {
  if (value < 0 || value > upper) {
    detail::domain_fail(std::string(name) + " = " + std::to_string(value) + " outside [0, " +
                        std::to_string(upper) + "]");
  }
}

double raw_cost(const CostCoefficients& c, int m) { return c.c0 + c.c1 * m + c.c2 * m * double(m); }

// Pr(pass | d) with the hypergeometric pmf written out in log space.
// (1-p)^0 = 1 and q^0 = 1 even at p = 1 or q = 1.
double pass_probability(int n, int m, int d, double p, double q) {
  const int z_lo = std::max(0, m - (n - d));
  const int z_hi = std::min(m, d);
  const double log_denominator = detail::log_choose(n, m);
  detail::CompensatedSum acc;
  for (int z = z_lo; z <= z_hi; ++z) {
    const double hyper =
        std::exp(detail::log_choose(d, z) + detail::log_choose(n - d, m - z) - log_denominator);
    acc.add(std::pow(1.0 - p, z) * std::pow(q, m - z) * hyper);
  }
  return std::clamp(acc.value(), 0.0, 1.0);
}

double loss_from_pass(const ProblemConfig& config, int m, int d, double pass) {
  const double t = config.termination_cost();
  return test_cost(m, config) + t + (config.outbreak_cost(d) - t) * pass;
}

}  // namespace

ProblemConfig::ProblemConfig() : ProblemConfig(ProblemParams{}) {}

ProblemConfig::ProblemConfig(ProblemParams params) : params_(std::move(params)) {
  if (params_.n < 1) detail::domain_fail("herd size must be at least 1");
  if (!is_probability(params_.p)) detail::domain_fail("sensitivity p must lie in [0, 1]");
  if (!is_probability(params_.q)) detail::domain_fail("specificity q must lie in [0, 1]");
  if (!(params_.a >= 0.0) || !std::isfinite(params_.a)) {
    detail::domain_fail("outbreak cost a must be finite and non-negative");
  }
  if (!(params_.t_per_animal >= 0.0) || !std::isfinite(params_.t_per_animal)) {
    detail::domain_fail("termination cost per animal must be finite and non-negative");
  }
  for (int m = 0; m <= params_.n; ++m) {
    const double c = raw_cost(params_.cost, m);
    if (!(c >= 0.0) || !std::isfinite(c)) {
      detail::domain_fail("testing cost c(m) is negative at m = " + std::to_string(m));
    }
  }
}

double ProblemConfig::outbreak_cost(int d) const {
  if (params_.outbreak_cost) return params_.outbreak_cost(d);
  return d == 0 ? 0.0 : params_.a;
}

ProblemConfig ProblemConfig::scaled(double lambda) const {
  if (!(lambda > 0.0)) detail::domain_fail("cost scale must be positive");
  ProblemParams scaled = params_;
  scaled.cost.c0 *= lambda;
  scaled.cost.c1 *= lambda;
  scaled.cost.c2 *= lambda;
  scaled.a *= lambda;
  scaled.t_per_animal *= lambda;
  if (params_.outbreak_cost) {
    scaled.outbreak_cost = [inner = params_.outbreak_cost, lambda](int d) { return lambda * inner(d); };
  }
  return ProblemConfig(std::move(scaled));
}

double test_cost(int m, const ProblemConfig& config) {
  check_count(m, config.herd_size(), "m");
  return raw_cost(config.cost(), m);
}

double hypergeometric_pmf(int n, int m, int d, int z) {
  if (n < 0) detail::domain_fail("n must be non-negative");
  check_count(m, n, "m");
  check_count(d, n, "d");
  check_count(z, std::min(m, d), "z");
  if (m - z > n - d) return 0.0;
  return std::exp(detail::log_choose(d, z) + detail::log_choose(n - d, m - z) -
                  detail::log_choose(n, m));
}

double prob_pass(int m, int d, const ProblemConfig& config) {
  const int n = config.herd_size();
  check_count(m, n, "m");
  check_count(d, n, "d");
  return pass_probability(n, m, d, config.sensitivity(), config.specificity());
}

LossBreakdown conditional_loss(int m, int d, const ProblemConfig& config) {
  const double pass = prob_pass(m, d, config);
  return {loss_from_pass(config, m, d, pass), 1.0 - pass, pass};
}

double binomial_pmf(int n, int d, double r) {
  if (n < 0) detail::domain_fail("n must be non-negative");
  check_count(d, n, "d");
  if (!is_probability(r)) detail::domain_fail("r must lie in [0, 1]");
  if (r == 0.0) return d == 0 ? 1.0 : 0.0;
  if (r == 1.0) return d == n ? 1.0 : 0.0;
  return std::exp(detail::log_choose(n, d) + d * std::log(r) + (n - d) * std::log1p(-r));
}

double expected_loss_given_r(int m, double r, const ProblemConfig& config) {
  const int n = config.herd_size();
  check_count(m, n, "m");
  if (!is_probability(r)) detail::domain_fail("r must lie in [0, 1]");
  detail::CompensatedSum acc;
  for (int d = 0; d <= n; ++d) {
    const double w = binomial_pmf(n, d, r);
    if (w == 0.0) continue;
    acc.add(conditional_loss(m, d, config).expected_loss * w);
  }
  return acc.value();
}

LossModel::LossModel(ProblemConfig config, int m_max) : config_(std::move(config)), m_max_(m_max) {
  const int n = config_.herd_size();
  check_count(m_max_, n, "m_max");
  log_choose_n_.resize(n + 1);
  for (int d = 0; d <= n; ++d) log_choose_n_[d] = detail::log_choose(n, d);
  step_ratio_.resize(n);
  for (int d = 0; d < n; ++d) step_ratio_[d] = (n - d) / (d + 1.0);

  const std::size_t row = n + 1;
  losses_.resize((m_max_ + 1) * row);
  pass_.resize((m_max_ + 1) * row);
  for (int m = 0; m <= m_max_; ++m) {
    for (int d = 0; d <= n; ++d) {
      const double pass = pass_probability(n, m, d, config_.sensitivity(), config_.specificity());
      pass_[m * row + d] = pass;
      losses_[m * row + d] = loss_from_pass(config_, m, d, pass);
    }
  }
}

std::span<const double> LossModel::conditional_losses(int m) const {
  check_count(m, m_max_, "m");
  const std::size_t row = herd_size() + 1;
  return {losses_.data() + m * row, row};
}

std::span<const double> LossModel::pass_probabilities(int m) const {
  check_count(m, m_max_, "m");
  const std::size_t row = herd_size() + 1;
  return {pass_.data() + m * row, row};
}

std::size_t LossModel::fill_weights(double r, std::span<double> w) const {
  if (!is_probability(r)) detail::domain_fail("r must lie in [0, 1]");
  const int n = herd_size();
  std::fill(w.begin(), w.end(), 0.0);
  if (r == 0.0) {
    w[0] = 1.0;
    return 1;
  }
  if (r == 1.0) {
    w[n] = 1.0;
    return w.size();
  }
  const double log_s = std::log1p(-r);
  if (n * log_s > -700.0) {
    // Anchor (1-r)^n in log space, then step with the pmf ratio. Past the
    // mode the tail is dropped once it is negligible against the peak.
    const double odds = r / (1.0 - r);
    w[0] = std::exp(n * log_s);
    double peak = w[0];
    for (int d = 0; d < n; ++d) {
      w[d + 1] = w[d] * odds * step_ratio_[d];
      peak = std::max(peak, w[d + 1]);
      if (d + 1 > n * r && w[d + 1] < peak * 1e-30) return d + 2;
    }
    return w.size();
  }
  const double log_r = std::log(r);
  for (int d = 0; d <= n; ++d) w[d] = std::exp(log_choose_n_[d] + d * log_r + (n - d) * log_s);
  return w.size();
}

std::vector<double> LossModel::binomial_weights(double r) const {
  std::vector<double> w(herd_size() + 1);
  fill_weights(r, w);
  return w;
}

double LossModel::dot(int m, std::span<const double> weights) const {
  return detail::compensated_dot(conditional_losses(m).first(weights.size()), weights);
}

double LossModel::expected_loss(int m, double r) const {
  std::vector<double> w(herd_size() + 1);
  const std::size_t used = fill_weights(r, w);
  return dot(m, std::span<const double>(w).first(used));
}

std::vector<double> LossModel::expected_losses(double r) const {
  std::vector<double> w(herd_size() + 1);
  const std::size_t used = fill_weights(r, w);
  std::vector<double> out(m_max_ + 1);
  for (int m = 0; m <= m_max_; ++m) out[m] = dot(m, std::span<const double>(w).first(used));
  return out;
}

}  // namespace herdrisk
