#include "herdrisk/herdrisk.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <exception>
#include <limits>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "herdrisk/bayes.hpp"
#include "herdrisk/bridge.hpp"
#include "herdrisk/error.hpp"
#include "herdrisk/imprecise.hpp"
#include "herdrisk/infogap.hpp"
#include "herdrisk/loss_core.hpp"
#include "herdrisk/report.hpp"

struct hr_model {
  std::shared_ptr<const herdrisk::LossModel> loss;
  herdrisk::InfoGapSettings infogap;
  herdrisk::CredalSearch credal;
};

namespace {

thread_local std::string last_error;

hr_status fail(hr_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

// Runs `body`, translating exceptions into status codes.
template <class F>
hr_status guarded(F&& body) {
  try {
    last_error.clear();
    return body();
  } catch (const herdrisk::InfeasibleMomentsError& e) {
    return fail(HR_ERR_INFEASIBLE_MOMENTS, e.what());
  } catch (const herdrisk::DomainError& e) {
    return fail(HR_ERR_DOMAIN, e.what());
  } catch (const herdrisk::NoSolutionError& e) {
    return fail(HR_ERR_NO_SOLUTION, e.what());
  } catch (const std::bad_alloc&) {
    return fail(HR_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(HR_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(HR_ERR_INTERNAL, "unknown error");
  }
}

template <class... Ptrs>
bool any_null(const Ptrs*... ptrs) {
  return ((ptrs == nullptr) || ...);
}

hr_status null_argument() { return fail(HR_ERR_NULL_ARGUMENT, "null argument"); }

herdrisk::BetaPrior to_prior(hr_beta_prior p) { return {p.alpha, p.beta}; }

hr_status copy_set(const std::vector<int>& set, int32_t* members, size_t capacity, size_t* count) {
  *count = set.size();
  if (set.size() > capacity) return fail(HR_ERR_BUFFER_TOO_SMALL, "output buffer too small");
  for (size_t i = 0; i < set.size(); ++i) members[i] = set[i];
  return HR_OK;
}

}  // namespace

extern "C" {

const char* hr_version(void) { return "1.0.0"; }

const char* hr_status_string(hr_status status) {
  switch (status) {
    case HR_OK: return "ok";
    case HR_ERR_NULL_ARGUMENT: return "null argument";
    case HR_ERR_DOMAIN: return "domain error";
    case HR_ERR_INFEASIBLE_MOMENTS: return "infeasible prior moments";
    case HR_ERR_NO_SOLUTION: return "no feasible decision";
    case HR_ERR_BUFFER_TOO_SMALL: return "buffer too small";
    case HR_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* hr_last_error(void) { return last_error.c_str(); }

void hr_problem_params_default(hr_problem_params* params) {
  if (params == nullptr) return;
  const herdrisk::ProblemParams d;
  *params = {d.n, d.p, d.q, d.cost.c0, d.cost.c1, d.cost.c2, d.a, d.t_per_animal};
}

void hr_settings_default(hr_settings* settings) {
  if (settings == nullptr) return;
  const herdrisk::InfoGapSettings d;
  *settings = {30, d.h_max, d.tolerance, d.grid_points};
}

hr_status hr_model_create(const hr_problem_params* params, const hr_settings* settings, hr_model** out) {
  if (any_null(params, out)) return null_argument();
  *out = nullptr;
  return guarded([&] {
    hr_settings s;
    hr_settings_default(&s);
    if (settings != nullptr) s = *settings;
    herdrisk::ProblemParams p;
    p.n = params->n;
    p.p = params->p;
    p.q = params->q;
    p.cost = {params->c0, params->c1, params->c2};
    p.a = params->a;
    p.t_per_animal = params->t_per_animal;

    auto model = std::make_unique<hr_model>();
    model->loss = std::make_shared<const herdrisk::LossModel>(herdrisk::ProblemConfig(std::move(p)), s.m_max);
    model->infogap.h_max = s.h_max;
    model->infogap.tolerance = s.tolerance;
    model->infogap.grid_points = s.grid_points;
    model->credal.h_max = s.h_max;
    model->credal.grid_points = s.grid_points;
    // Validates the settings eagerly.
    (void)herdrisk::worst_case_loss(*model->loss, 0, 0.0, model->infogap);
    *out = model.release();
    return HR_OK;
  });
}

void hr_model_destroy(hr_model* model) { delete model; }

hr_status hr_test_cost(const hr_model* model, int32_t m, double* out) {
  if (any_null(model, out)) return null_argument();
  return guarded([&] {
    *out = herdrisk::test_cost(m, model->loss->config());
    return HR_OK;
  });
}

hr_status hr_hypergeometric_pmf(int32_t n, int32_t m, int32_t d, int32_t z, double* out) {
  if (any_null(out)) return null_argument();
  return guarded([&] {
    *out = herdrisk::hypergeometric_pmf(n, m, d, z);
    return HR_OK;
  });
}

hr_status hr_binomial_pmf(int32_t n, int32_t d, double r, double* out) {
  if (any_null(out)) return null_argument();
  return guarded([&] {
    *out = herdrisk::binomial_pmf(n, d, r);
    return HR_OK;
  });
}

hr_status hr_prob_pass(const hr_model* model, int32_t m, int32_t d, double* out) {
  if (any_null(model, out)) return null_argument();
  return guarded([&] {
    *out = herdrisk::prob_pass(m, d, model->loss->config());
    return HR_OK;
  });
}

hr_status hr_conditional_loss(const hr_model* model, int32_t m, int32_t d, hr_loss_breakdown* out) {
  if (any_null(model, out)) return null_argument();
  return guarded([&] {
    const auto b = herdrisk::conditional_loss(m, d, model->loss->config());
    *out = {b.expected_loss, b.prob_termination, b.prob_pass};
    return HR_OK;
  });
}

hr_status hr_expected_loss_given_r(const hr_model* model, int32_t m, double r, double* out) {
  if (any_null(model, out)) return null_argument();
  return guarded([&] {
    *out = (m >= 0 && m <= model->loss->m_max() && r >= 0.0 && r <= 1.0)
               ? model->loss->expected_loss(m, r)
               : herdrisk::expected_loss_given_r(m, r, model->loss->config());
    return HR_OK;
  });
}

hr_status hr_prior_from_moments(double t, double sigma, hr_beta_prior* out) {
  if (any_null(out)) return null_argument();
  return guarded([&] {
    const auto prior = herdrisk::prior_from_moments(t, sigma);
    *out = {prior.alpha(), prior.beta()};
    return HR_OK;
  });
}

hr_status hr_beta_binomial_pmf(const hr_model* model, hr_beta_prior prior, int32_t d, double* out) {
  if (any_null(model, out)) return null_argument();
  return guarded([&] {
    *out = herdrisk::beta_binomial_pmf(d, to_prior(prior), model->loss->config());
    return HR_OK;
  });
}

hr_status hr_bayes_expected_loss(const hr_model* model, hr_beta_prior prior, int32_t m, double* out) {
  if (any_null(model, out)) return null_argument();
  return guarded([&] {
    *out = herdrisk::bayes_expected_loss(m, to_prior(prior), model->loss->config());
    return HR_OK;
  });
}

hr_status hr_bayes_optimal(const hr_model* model, hr_beta_prior prior, int32_t m_max, int32_t* m_star,
                           double* expected_loss) {
  if (any_null(model, m_star, expected_loss)) return null_argument();
  return guarded([&] {
    const auto best = herdrisk::optimal_m_bayes(to_prior(prior), model->loss->config(), m_max);
    *m_star = best.m_star;
    *expected_loss = best.expected_loss;
    return HR_OK;
  });
}

hr_status hr_loss_exceedance(const hr_model* model, hr_beta_prior prior, int32_t m, double threshold, double* out) {
  if (any_null(model, out)) return null_argument();
  return guarded([&] {
    *out = herdrisk::loss_exceedance(m, to_prior(prior), threshold, model->loss->config());
    return HR_OK;
  });
}

hr_status hr_exceedance_curve(const hr_model* model, hr_beta_prior prior, int32_t m, const double* thresholds,
                              size_t count, double* out) {
  if (any_null(model) || (count > 0 && any_null(thresholds, out))) return null_argument();
  return guarded([&] {
    const auto curve =
        herdrisk::exceedance_curve(m, to_prior(prior), {thresholds, count}, model->loss->config());
    std::copy(curve.probabilities.begin(), curve.probabilities.end(), out);
    return HR_OK;
  });
}

hr_status hr_sensitivity_grid(const hr_model* model, const double* t_values, size_t t_count, const double* s_values,
                              size_t s_count, int32_t m, double threshold, double* out) {
  if (any_null(model) || (t_count > 0 && any_null(t_values)) || (s_count > 0 && any_null(s_values)) ||
      (t_count * s_count > 0 && any_null(out))) {
    return null_argument();
  }
  return guarded([&] {
    const auto grid = herdrisk::sensitivity_grid({t_values, t_count}, {s_values, s_count}, m, threshold,
                                                 model->loss->config());
    for (size_t i = 0; i < s_count; ++i) {
      for (size_t j = 0; j < t_count; ++j) {
        out[i * t_count + j] = grid.cells[i][j].value_or(std::numeric_limits<double>::quiet_NaN());
      }
    }
    return HR_OK;
  });
}

hr_status hr_worst_case_loss(const hr_model* model, int32_t m, double h, double* out,
                             int32_t* interior_exceeds_endpoint) {
  if (any_null(model, out)) return null_argument();
  return guarded([&] {
    const auto w = herdrisk::worst_case_loss(*model->loss, m, h, model->infogap);
    *out = w.value;
    if (interior_exceeds_endpoint != nullptr) *interior_exceeds_endpoint = w.interior_exceeds_endpoint ? 1 : 0;
    return HR_OK;
  });
}

namespace {
hr_robustness_point to_c(const herdrisk::RobustnessResult& r) {
  int32_t status = HR_ROBUST_FEASIBLE;
  if (r.status == herdrisk::RobustnessStatus::infeasible) status = HR_ROBUST_INFEASIBLE;
  if (r.status == herdrisk::RobustnessStatus::saturated) status = HR_ROBUST_SATURATED;
  return {r.m, r.critical_cost, status, r.h_hat};
}
}  // namespace

hr_status hr_robustness(const hr_model* model, int32_t m, double critical_cost, hr_robustness_point* out) {
  if (any_null(model, out)) return null_argument();
  return guarded([&] {
    *out = to_c(herdrisk::robustness(*model->loss, m, critical_cost, model->infogap));
    return HR_OK;
  });
}

hr_status hr_robustness_curve(const hr_model* model, int32_t m, const double* critical_costs, size_t count,
                              hr_robustness_point* out) {
  if (any_null(model, critical_costs, out)) return null_argument();
  return guarded([&] {
    const auto curve = herdrisk::robustness_curve(*model->loss, m, {critical_costs, count}, model->infogap);
    for (size_t i = 0; i < curve.size(); ++i) out[i] = to_c(curve[i]);
    return HR_OK;
  });
}

hr_status hr_infogap_optimal(const hr_model* model, double critical_cost, int32_t* argmax, size_t capacity,
                             size_t* count, double* h_hat, int32_t* saturated) {
  if (any_null(model, count, h_hat) || (capacity > 0 && any_null(argmax))) return null_argument();
  return guarded([&] {
    const auto s = herdrisk::infogap_optimal(*model->loss, critical_cost, -1, model->infogap);
    *h_hat = s.h_hat;
    if (saturated != nullptr) *saturated = s.saturated ? 1 : 0;
    return copy_set(s.argmax, argmax, capacity, count);
  });
}

hr_status hr_dominance_margin(const hr_model* model, int32_t m, int32_t m_prime, double h, double* out) {
  if (any_null(model, out)) return null_argument();
  return guarded([&] {
    *out = herdrisk::dominance_margin(*model->loss, m, m_prime, h, model->credal);
    return HR_OK;
  });
}

hr_status hr_maximality_score(const hr_model* model, int32_t m, double h, double* out) {
  if (any_null(model, out)) return null_argument();
  return guarded([&] {
    *out = herdrisk::maximality_score(*model->loss, m, h, model->loss->m_max(), model->credal);
    return HR_OK;
  });
}

hr_status hr_maximality_table(const hr_model* model, const double* h_values, size_t h_count, double* out) {
  if (any_null(model) || (h_count > 0 && any_null(h_values, out))) return null_argument();
  return guarded([&] {
    const auto table =
        herdrisk::maximality_table(*model->loss, {h_values, h_count}, model->loss->m_max(), model->credal);
    for (size_t m = 0; m < table.scores.size(); ++m) {
      for (size_t j = 0; j < h_count; ++j) out[m * h_count + j] = table.scores[m][j];
    }
    return HR_OK;
  });
}

hr_status hr_maximal_set(const hr_model* model, double h, int32_t* members, size_t capacity, size_t* count) {
  if (any_null(model, count) || (capacity > 0 && any_null(members))) return null_argument();
  return guarded([&] {
    return copy_set(herdrisk::maximal_set(*model->loss, h, model->loss->m_max(), model->credal), members, capacity,
                    count);
  });
}

hr_status hr_gamma_minimax(const hr_model* model, double h, int32_t* members, size_t capacity, size_t* count) {
  if (any_null(model, count) || (capacity > 0 && any_null(members))) return null_argument();
  return guarded([&] {
    return copy_set(herdrisk::gamma_minimax(*model->loss, h, model->loss->m_max(), model->infogap), members,
                    capacity, count);
  });
}

hr_status hr_theorem_report_json(const hr_model* model, const double* horizons, size_t h_count,
                                 int32_t h_prime_interior, char** out) {
  if (any_null(model, out) || (h_count > 0 && any_null(horizons))) return null_argument();
  *out = nullptr;
  return guarded([&] {
    const auto report = herdrisk::theorem_report(model->loss, {horizons, h_count}, model->infogap, model->credal,
                                                 h_prime_interior);
    const std::string text = report.dump(2) + "\n";
    char* buffer = new char[text.size() + 1];
    std::memcpy(buffer, text.c_str(), text.size() + 1);
    *out = buffer;
    return HR_OK;
  });
}

void hr_string_free(char* s) { delete[] s; }

}  // extern "C"
