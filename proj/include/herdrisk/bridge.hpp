#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "herdrisk/imprecise.hpp"
#include "herdrisk/infogap.hpp"
#include "herdrisk/loss_core.hpp"

namespace herdrisk {

/// One linear piece a + b*h of a piecewise-linear curve. A piece covers
/// (previous upper, upper]; the first piece also covers h = 0 and the last
/// piece must be unbounded.
struct LinearPiece {
  double upper = 0.0;
  bool unbounded = false;
  double intercept = 0.0;
  double slope = 0.0;
};

/// Horizon at which a curve stops meeting a level.
struct HorizonResult {
  enum class Status { feasible, infeasible, unbounded };
  Status status = Status::infeasible;
  double h_hat = 0.0;

  bool feasible() const { return status != Status::infeasible; }
};

/// Upper expected loss of one decision as a function of the horizon of
/// uncertainty, h -> sup of E_p[L(d, .)] over the nested set of densities
/// indexed by h. The parameter space and its nested subsets are implicit in
/// the curve: only their image through the upper expectation matters.
///
/// Two representations: exact piecewise-linear curves (used for the
/// textbook counterexamples) and an adapter over the herd model's worst-case
/// loss M(m, h). Curves must be non-decreasing in h; construction checks it.
class PrevisionCurve {
 public:
  static PrevisionCurve piecewise_linear(std::string label, std::vector<LinearPiece> pieces);
  static PrevisionCurve herd_decision(std::shared_ptr<const LossModel> model, int m, InfoGapSettings settings = {});

  const std::string& label() const { return label_; }
  double eval(double h) const;
  /// Largest h the curve is defined at (infinity for piecewise curves).
  double domain_max() const;
  /// sup { h : eval(h) <= level }.
  HorizonResult horizon(double level, double tolerance = 1e-9) const;

 private:
  struct Piecewise {
    std::vector<LinearPiece> pieces;
  };
  struct HerdDecision {
    std::shared_ptr<const LossModel> model;
    int m;
    InfoGapSettings settings;
  };

  PrevisionCurve(std::string label, std::variant<Piecewise, HerdDecision> rep);

  std::string label_;
  std::variant<Piecewise, HerdDecision> rep_;
};

/// Upper prevision of a loss difference: (d, d', h) -> P_h(L(d') - L(d)).
/// Per-decision curves cannot express it, so maximality needs this extra
/// oracle.
class DifferencePrevisionOracle {
 public:
  explicit DifferencePrevisionOracle(std::function<double(std::size_t, std::size_t, double)> eval);
  double operator()(std::size_t d, std::size_t d_prime, double h) const;

 private:
  std::function<double(std::size_t, std::size_t, double)> eval_;
};

/// Indices into a curve list.
using DecisionSet = std::vector<std::size_t>;

/// L*(h): the smallest upper expected loss at horizon h.
double lstar(std::span<const PrevisionCurve> curves, double h);

struct DerivativeProbe {
  bool positive = false;
  std::vector<double> steps;
  std::vector<double> estimates;
  // Estimates keep the same sign pattern when the step shrinks; when they
  // disagree the verdict is a numerical judgement call.
  bool estimates_agree = true;
  // Estimates are monotone in the step size (either direction).
  bool monotone_trend = true;
};

/// Probes the right derivative of L* at h with forward differences.
/// Positive iff every estimate exceeds `floor`.
DerivativeProbe right_derivative_positive(std::span<const PrevisionCurve> curves, double h,
                                          std::span<const double> steps = {}, double floor = 1e-9);

/// Info-gap solution D*(L_c): decisions with the largest horizon at level
/// L_c (ties within `tolerance`). Throws NoSolutionError when all are
/// infeasible.
DecisionSet infogap_solution_abstract(std::span<const PrevisionCurve> curves, double critical_cost,
                                      double tolerance = 1e-9);

/// argmin of the upper expected loss at h (ties within 1e-9 relative).
DecisionSet gamma_minimax_abstract(std::span<const PrevisionCurve> curves, double h);

struct Theorem1Verdict {
  double h = 0.0;
  double critical_cost = 0.0;
  double lstar_value = 0.0;
  DerivativeProbe derivative;
  bool level_matches = false;  // L*(h) == L_c
  bool conditions_hold = false;
  DecisionSet infogap;
  DecisionSet gamma_minimax;
  bool sets_equal = false;

  /// The theorem's claim: conditions imply equal sets.
  bool consistent() const { return !conditions_hold || sets_equal; }
};

/// Compares D*(L_c) with the Gamma-minimax set at h. L_c defaults to
/// L*(h); passing another level shows what happens when it is not attained.
Theorem1Verdict theorem1_check(std::span<const PrevisionCurve> curves, double h,
                               std::optional<double> critical_cost = std::nullopt);

struct Theorem2Verdict {
  double h = 0.0;
  std::vector<double> h_primes;
  std::vector<double> failed_h_primes;  // where the derivative hypothesis fails
  bool hypothesis_holds = false;
  DecisionSet infogap_union;  // over h' where the hypothesis holds
  DecisionSet maximal;
  bool inclusion = false;
  bool equality = false;
};

/// Checks that info-gap decisions at levels L*(h') for h' in [0, h] are all
/// maximal with respect to the upper prevision at h.
Theorem2Verdict theorem2_check(std::span<const PrevisionCurve> curves, const DifferencePrevisionOracle& differences,
                               double h, std::span<const double> h_prime_grid, double tolerance = 1e-6);

/// `interior` uniform points strictly inside (0, h) plus both endpoints.
std::vector<double> default_h_prime_grid(double h, int interior = 20);

/// The two piecewise-linear counterexamples (which = 1 or 2); labels d1, d2.
std::vector<PrevisionCurve> make_counterexample(int which);

/// One adapter curve per m = 0..model->m_max().
std::vector<PrevisionCurve> herd_curves(std::shared_ptr<const LossModel> model, InfoGapSettings settings = {});

/// P_h(L(m') - L(m)) for the herd model, with curve index == m.
DifferencePrevisionOracle herd_difference_oracle(std::shared_ptr<const LossModel> model, CredalSearch search = {});

}  // namespace herdrisk
