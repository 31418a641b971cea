#include "herdrisk/bridge.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "herdrisk/error.hpp"

namespace herdrisk {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double piece_value(const LinearPiece& piece, double h) { return piece.intercept + piece.slope * h; }

void validate_pieces(const std::vector<LinearPiece>& pieces) {
  if (pieces.empty()) detail::domain_fail("piecewise curve needs at least one piece");
  if (!pieces.back().unbounded) detail::domain_fail("last piece of a piecewise curve must be unbounded");
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const auto& piece = pieces[i];
    if (!(piece.slope >= 0.0)) detail::domain_fail("piecewise curve has a decreasing piece");
    if (i + 1 < pieces.size()) {
      if (piece.unbounded) detail::domain_fail("only the last piece may be unbounded");
      if (!(piece.upper >= 0.0)) detail::domain_fail("breakpoints must be non-negative");
      if (i > 0 && !(piece.upper > pieces[i - 1].upper)) detail::domain_fail("breakpoints must increase");
      // Right limit at the breakpoint may jump up, never down.
      if (piece_value(pieces[i + 1], piece.upper) < piece_value(piece, piece.upper)) {
        detail::domain_fail("piecewise curve decreases across a breakpoint");
      }
    }
  }
}

HorizonResult piecewise_horizon(const std::vector<LinearPiece>& pieces, double level) {
  if (piece_value(pieces.front(), 0.0) > level) return {HorizonResult::Status::infeasible, 0.0};
  double best = 0.0;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const auto& piece = pieces[i];
    const double lo = (i == 0) ? 0.0 : pieces[i - 1].upper;
    const double hi = piece.unbounded ? kInf : piece.upper;
    double candidate;
    if (piece.slope == 0.0) {
      if (piece.intercept > level) continue;
      candidate = hi;
    } else {
      candidate = std::min(hi, (level - piece.intercept) / piece.slope);
    }
    // Pieces after the first are open on the left.
    const bool inside = (i == 0) ? candidate >= lo : candidate > lo;
    if (inside) best = std::max(best, candidate);
  }
  if (best == kInf) return {HorizonResult::Status::unbounded, kInf};
  return {HorizonResult::Status::feasible, best};
}

bool is_subset(const DecisionSet& inner, const DecisionSet& outer) {
  return std::includes(outer.begin(), outer.end(), inner.begin(), inner.end());
}

}  // namespace

PrevisionCurve::PrevisionCurve(std::string label, std::variant<Piecewise, HerdDecision> rep)
    : label_(std::move(label)), rep_(std::move(rep)) {}

PrevisionCurve PrevisionCurve::piecewise_linear(std::string label, std::vector<LinearPiece> pieces) {
  validate_pieces(pieces);
  return PrevisionCurve(std::move(label), Piecewise{std::move(pieces)});
}

PrevisionCurve PrevisionCurve::herd_decision(std::shared_ptr<const LossModel> model, int m,
                                             InfoGapSettings settings) {
  if (!model) detail::domain_fail("herd curve needs a loss model");
  if (m < 0 || m > model->m_max()) detail::domain_fail("m outside the model's decision range");
  PrevisionCurve curve("m=" + std::to_string(m), HerdDecision{std::move(model), m, settings});

  // Grid-sampled monotonicity check over the trusted range.
  constexpr int kSamples = 16;
  double previous = -kInf;
  for (int k = 0; k <= kSamples; ++k) {
    const double value = curve.eval(settings.h_max * k / kSamples);
    if (value < previous * (1.0 - 1e-12)) detail::domain_fail("herd curve " + curve.label() + " decreases in h");
    previous = value;
  }
  return curve;
}

double PrevisionCurve::eval(double h) const {
  if (!(h >= 0.0)) detail::domain_fail("horizon must be non-negative");
  if (const auto* pw = std::get_if<Piecewise>(&rep_)) {
    for (const auto& piece : pw->pieces) {
      if (piece.unbounded || h <= piece.upper) return piece_value(piece, h);
    }
  }
  const auto& herd = std::get<HerdDecision>(rep_);
  return worst_case_loss(*herd.model, herd.m, h, herd.settings).value;
}

double PrevisionCurve::domain_max() const {
  if (std::holds_alternative<Piecewise>(rep_)) return kInf;
  return std::get<HerdDecision>(rep_).settings.h_max;
}

HorizonResult PrevisionCurve::horizon(double level, double tolerance) const {
  if (const auto* pw = std::get_if<Piecewise>(&rep_)) return piecewise_horizon(pw->pieces, level);
  const auto& herd = std::get<HerdDecision>(rep_);
  auto settings = herd.settings;
  settings.tolerance = tolerance;
  const auto r = robustness(*herd.model, herd.m, level, settings);
  switch (r.status) {
    case RobustnessStatus::infeasible:
      return {HorizonResult::Status::infeasible, 0.0};
    case RobustnessStatus::saturated:
      return {HorizonResult::Status::unbounded, r.h_hat};
    case RobustnessStatus::feasible:
      break;
  }
  return {HorizonResult::Status::feasible, r.h_hat};
}

DifferencePrevisionOracle::DifferencePrevisionOracle(std::function<double(std::size_t, std::size_t, double)> eval)
    : eval_(std::move(eval)) {
  if (!eval_) detail::domain_fail("difference oracle needs an evaluator");
}

double DifferencePrevisionOracle::operator()(std::size_t d, std::size_t d_prime, double h) const {
  if (d == d_prime) return 0.0;
  return eval_(d, d_prime, h);
}

double lstar(std::span<const PrevisionCurve> curves, double h) {
  if (curves.empty()) detail::domain_fail("L* needs at least one curve");
  double best = kInf;
  for (const auto& curve : curves) best = std::min(best, curve.eval(h));
  return best;
}

DerivativeProbe right_derivative_positive(std::span<const PrevisionCurve> curves, double h,
                                          std::span<const double> steps, double floor) {
  static constexpr double kDefaultSteps[] = {1e-2, 1e-4, 1e-6};
  if (steps.empty()) steps = kDefaultSteps;
  if (curves.empty()) detail::domain_fail("derivative probe needs at least one curve");
  double domain = kInf;
  for (const auto& curve : curves) domain = std::min(domain, curve.domain_max());
  for (double step : steps) {
    if (!(step > 0.0)) detail::domain_fail("probe steps must be positive");
    if (h + step > domain) detail::domain_fail("probe point h + step lies outside the curve domain");
  }

  DerivativeProbe probe;
  probe.steps.assign(steps.begin(), steps.end());
  const double base = lstar(curves, h);
  std::size_t above = 0;
  for (double step : steps) {
    const double estimate = (lstar(curves, h + step) - base) / step;
    probe.estimates.push_back(estimate);
    if (estimate > floor) ++above;
  }
  probe.positive = above == steps.size();
  probe.estimates_agree = above == 0 || above == steps.size();
  bool non_increasing = true;
  bool non_decreasing = true;
  for (std::size_t i = 1; i < probe.estimates.size(); ++i) {
    non_increasing = non_increasing && probe.estimates[i] <= probe.estimates[i - 1];
    non_decreasing = non_decreasing && probe.estimates[i] >= probe.estimates[i - 1];
  }
  probe.monotone_trend = non_increasing || non_decreasing;
  return probe;
}

DecisionSet infogap_solution_abstract(std::span<const PrevisionCurve> curves, double critical_cost,
                                      double tolerance) {
  std::vector<HorizonResult> horizons;
  horizons.reserve(curves.size());
  double best = -1.0;
  for (const auto& curve : curves) {
    horizons.push_back(curve.horizon(critical_cost, tolerance));
    if (horizons.back().feasible()) best = std::max(best, horizons.back().h_hat);
  }
  if (best < 0.0) throw NoSolutionError("no decision meets critical cost " + std::to_string(critical_cost));
  DecisionSet out;
  for (std::size_t i = 0; i < horizons.size(); ++i) {
    if (horizons[i].feasible() && horizons[i].h_hat >= best - tolerance) out.push_back(i);
  }
  return out;
}

DecisionSet gamma_minimax_abstract(std::span<const PrevisionCurve> curves, double h) {
  if (curves.empty()) detail::domain_fail("Gamma-minimax needs at least one curve");
  std::vector<double> values;
  values.reserve(curves.size());
  for (const auto& curve : curves) values.push_back(curve.eval(h));
  const double best = *std::min_element(values.begin(), values.end());
  const double slack = 1e-9 * std::max(1.0, std::abs(best));
  DecisionSet out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] <= best + slack) out.push_back(i);
  }
  return out;
}

Theorem1Verdict theorem1_check(std::span<const PrevisionCurve> curves, double h,
                               std::optional<double> critical_cost) {
  Theorem1Verdict v;
  v.h = h;
  v.lstar_value = lstar(curves, h);
  v.critical_cost = critical_cost.value_or(v.lstar_value);
  v.level_matches = std::abs(v.lstar_value - v.critical_cost) <= 1e-12 * std::max(1.0, std::abs(v.critical_cost));
  v.derivative = right_derivative_positive(curves, h);
  v.conditions_hold = v.level_matches && v.derivative.positive;
  try {
    v.infogap = infogap_solution_abstract(curves, v.critical_cost);
  } catch (const NoSolutionError&) {
    v.infogap.clear();
  }
  v.gamma_minimax = gamma_minimax_abstract(curves, h);
  v.sets_equal = v.infogap == v.gamma_minimax;
  return v;
}

Theorem2Verdict theorem2_check(std::span<const PrevisionCurve> curves, const DifferencePrevisionOracle& differences,
                               double h, std::span<const double> h_prime_grid, double tolerance) {
  Theorem2Verdict v;
  v.h = h;
  v.h_primes.assign(h_prime_grid.begin(), h_prime_grid.end());
  for (double hp : h_prime_grid) {
    if (!(hp >= 0.0 && hp <= h)) detail::domain_fail("every h' must lie in [0, h]");
  }

  std::vector<bool> in_union(curves.size(), false);
  for (double hp : h_prime_grid) {
    if (!right_derivative_positive(curves, hp).positive) {
      v.failed_h_primes.push_back(hp);
      continue;
    }
    for (std::size_t i : infogap_solution_abstract(curves, lstar(curves, hp))) in_union[i] = true;
  }
  v.hypothesis_holds = v.failed_h_primes.empty();
  for (std::size_t i = 0; i < curves.size(); ++i) {
    if (in_union[i]) v.infogap_union.push_back(i);
  }

  for (std::size_t d = 0; d < curves.size(); ++d) {
    bool undominated = true;
    for (std::size_t dp = 0; dp < curves.size() && undominated; ++dp) {
      undominated = differences(d, dp, h) >= -tolerance;
    }
    if (undominated) v.maximal.push_back(d);
  }
  v.inclusion = is_subset(v.infogap_union, v.maximal);
  v.equality = v.infogap_union == v.maximal;
  return v;
}

std::vector<double> default_h_prime_grid(double h, int interior) {
  if (!(h >= 0.0)) detail::domain_fail("horizon must be non-negative");
  if (interior < 0) detail::domain_fail("interior point count must be non-negative");
  std::vector<double> grid;
  grid.reserve(interior + 2);
  grid.push_back(0.0);
  for (int k = 1; k <= interior; ++k) grid.push_back(h * k / (interior + 1));
  if (h > 0.0) grid.push_back(h);
  return grid;
}

std::vector<PrevisionCurve> make_counterexample(int which) {
  std::vector<PrevisionCurve> curves;
  if (which == 1) {
    // Jump at h = 1 makes L* discontinuous.
    curves.push_back(PrevisionCurve::piecewise_linear("d1", {{1.0, false, 0.0, 1.0}, {0.0, true, 3.0, 1.0}}));
    curves.push_back(PrevisionCurve::piecewise_linear("d2", {{1.0, false, 1.0, 1.0}, {0.0, true, 4.0, 1.0}}));
  } else if (which == 2) {
    // L* flat on [1, 2]: continuous but not strictly increasing.
    curves.push_back(PrevisionCurve::piecewise_linear("d1", {{1.0, false, 0.0, 0.0}, {0.0, true, -1.0, 1.0}}));
    curves.push_back(PrevisionCurve::piecewise_linear("d2", {{2.0, false, 0.0, 0.0}, {0.0, true, -2.0, 1.0}}));
  } else {
    detail::domain_fail("counterexample must be 1 or 2");
  }
  return curves;
}

std::vector<PrevisionCurve> herd_curves(std::shared_ptr<const LossModel> model, InfoGapSettings settings) {
  if (!model) detail::domain_fail("herd curves need a loss model");
  std::vector<PrevisionCurve> curves;
  curves.reserve(model->m_max() + 1);
  for (int m = 0; m <= model->m_max(); ++m) curves.push_back(PrevisionCurve::herd_decision(model, m, settings));
  return curves;
}

DifferencePrevisionOracle herd_difference_oracle(std::shared_ptr<const LossModel> model, CredalSearch search) {
  if (!model) detail::domain_fail("difference oracle needs a loss model");
  return DifferencePrevisionOracle([model = std::move(model), search](std::size_t d, std::size_t dp, double h) {
    return upper_difference(*model, static_cast<int>(d), static_cast<int>(dp), h, search);
  });
}

}  // namespace herdrisk
