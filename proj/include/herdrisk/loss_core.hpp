#pragma once

#include <functional>
#include <span>
#include <vector>

namespace herdrisk {

/// Quadratic testing cost c(m) = c0 + c1*m + c2*m^2, in utiles.
struct CostCoefficients {
  double c0 = 1000.0;
  double c1 = -2000.0;
  double c2 = 1000.0;
};

/// Raw parameters of the herd-inspection model. Defaults are the reference
/// case: a herd of 250, a near-perfect test, and a 10^7 utile outbreak.
struct ProblemParams {
  int n = 250;
  double p = 0.9999;  // sensitivity
  double q = 0.999;   // specificity
  CostCoefficients cost{};
  double a = 1.0e7;             // outbreak cost when d >= 1
  double t_per_animal = 400.0;  // termination cost is t_per_animal * n

  // Optional d-dependent outbreak cost a(d). When empty the step function
  // a(0) = 0, a(d >= 1) = a is used.
  std::function<double(int)> outbreak_cost;
};

/// Validated model parameters. Construction throws DomainError when an
/// invariant fails (probabilities outside [0,1], negative costs, c(m) < 0 for
/// some m in 0..n).
class ProblemConfig {
 public:
  ProblemConfig();
  explicit ProblemConfig(ProblemParams params);

  int herd_size() const { return params_.n; }
  double sensitivity() const { return params_.p; }
  double specificity() const { return params_.q; }
  const CostCoefficients& cost() const { return params_.cost; }
  double outbreak_constant() const { return params_.a; }
  double termination_cost() const { return params_.t_per_animal * params_.n; }
  double outbreak_cost(int d) const;
  const ProblemParams& params() const { return params_; }

  /// Same model with every cost (testing, outbreak, termination) multiplied
  /// by lambda > 0.
  ProblemConfig scaled(double lambda) const;

 private:
  ProblemParams params_;
};

/// Expected loss conditional on d, with the termination/pass split.
struct LossBreakdown {
  double expected_loss = 0.0;
  double prob_termination = 0.0;
  double prob_pass = 0.0;
};

double test_cost(int m, const ProblemConfig& config);

/// Probability of z diseased animals in a sample of m drawn without
/// replacement from n animals of which d are diseased.
double hypergeometric_pmf(int n, int m, int d, int z);

/// Pr(herd passes inspection | d diseased).
double prob_pass(int m, int d, const ProblemConfig& config);

LossBreakdown conditional_loss(int m, int d, const ProblemConfig& config);

double binomial_pmf(int n, int d, double r);

/// L(m|r): loss averaged over d ~ Binomial(n, r).
double expected_loss_given_r(int m, double r, const ProblemConfig& config);

/// Precomputed conditional losses for decisions m = 0..m_max. Immutable after
/// construction; every analysis module evaluates L(m|r) through this.
class LossModel {
 public:
  LossModel(ProblemConfig config, int m_max);

  const ProblemConfig& config() const { return config_; }
  int herd_size() const { return config_.herd_size(); }
  int m_max() const { return m_max_; }

  /// L(m, d) for d = 0..n.
  std::span<const double> conditional_losses(int m) const;
  /// Pr(pass | d) for d = 0..n.
  std::span<const double> pass_probabilities(int m) const;

  /// Binomial(n, r) weights for d = 0..n.
  std::vector<double> binomial_weights(double r) const;

  double expected_loss(int m, double r) const;
  /// L(m|r) for every m = 0..m_max, sharing one set of binomial weights.
  std::vector<double> expected_losses(double r) const;

 private:
  double dot(int m, std::span<const double> weights) const;
  // Fills w (size n+1) and returns the length of its non-negligible prefix.
  std::size_t fill_weights(double r, std::span<double> w) const;

  ProblemConfig config_;
  int m_max_;
  std::vector<double> log_choose_n_;  // log C(n, d)
  std::vector<double> step_ratio_;    // (n - d) / (d + 1)
  std::vector<double> losses_;        // (m_max+1) x (n+1), row-major
  std::vector<double> pass_;
};

}  // namespace herdrisk
