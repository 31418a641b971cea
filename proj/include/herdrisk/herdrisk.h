/*
 * C interface to the herd-inspection decision library.
 *
 * Every function returns an hr_status; results come back through out
 * parameters. On failure hr_last_error() describes the problem for the
 * calling thread. Models are opaque handles created with hr_model_create and
 * released with hr_model_destroy; a model is immutable and may be shared
 * between threads.
 */
#ifndef HERDRISK_H
#define HERDRISK_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(HERDRISK_BUILDING)
#    define HR_API __declspec(dllexport)
#  else
#    define HR_API __declspec(dllimport)
#  endif
#else
#  define HR_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hr_status {
  HR_OK = 0,
  HR_ERR_NULL_ARGUMENT = 1,
  HR_ERR_DOMAIN = 2,
  HR_ERR_INFEASIBLE_MOMENTS = 3,
  HR_ERR_NO_SOLUTION = 4,
  HR_ERR_BUFFER_TOO_SMALL = 5,
  HR_ERR_INTERNAL = 99
} hr_status;

typedef struct hr_model hr_model;

/* Model parameters; hr_problem_params_default fills in the reference case. */
typedef struct hr_problem_params {
  int32_t n;
  double p;
  double q;
  double c0;
  double c1;
  double c2;
  double a;
  double t_per_animal;
} hr_problem_params;

/* Analysis settings shared by the info-gap, maximality and theorem routines. */
typedef struct hr_settings {
  int32_t m_max;         /* decisions 0..m_max are analysed (default 30) */
  double h_max;          /* largest trusted horizon (default 0.05) */
  double tolerance;      /* bisection tolerance in h (default 1e-9) */
  int32_t grid_points;   /* inner r-grid resolution (default 64) */
} hr_settings;

typedef struct hr_loss_breakdown {
  double expected_loss;
  double prob_termination;
  double prob_pass;
} hr_loss_breakdown;

typedef struct hr_beta_prior {
  double alpha;
  double beta;
} hr_beta_prior;

typedef enum hr_robustness_status {
  HR_ROBUST_FEASIBLE = 0,
  HR_ROBUST_INFEASIBLE = 1,
  HR_ROBUST_SATURATED = 2
} hr_robustness_status;

typedef struct hr_robustness_point {
  int32_t m;
  double critical_cost;
  int32_t status; /* hr_robustness_status */
  double h_hat;   /* NaN when infeasible, h_max when saturated */
} hr_robustness_point;

HR_API const char* hr_version(void);
HR_API const char* hr_status_string(hr_status status);
/* Message for the last failing call on this thread ("" if none). */
HR_API const char* hr_last_error(void);

HR_API void hr_problem_params_default(hr_problem_params* params);
HR_API void hr_settings_default(hr_settings* settings);

HR_API hr_status hr_model_create(const hr_problem_params* params, const hr_settings* settings, hr_model** out);
HR_API void hr_model_destroy(hr_model* model);

/* Loss kernels. */
HR_API hr_status hr_test_cost(const hr_model* model, int32_t m, double* out);
HR_API hr_status hr_hypergeometric_pmf(int32_t n, int32_t m, int32_t d, int32_t z, double* out);
HR_API hr_status hr_binomial_pmf(int32_t n, int32_t d, double r, double* out);
HR_API hr_status hr_prob_pass(const hr_model* model, int32_t m, int32_t d, double* out);
HR_API hr_status hr_conditional_loss(const hr_model* model, int32_t m, int32_t d, hr_loss_breakdown* out);
HR_API hr_status hr_expected_loss_given_r(const hr_model* model, int32_t m, double r, double* out);

/* Bayesian analysis. */
HR_API hr_status hr_prior_from_moments(double t, double sigma, hr_beta_prior* out);
HR_API hr_status hr_beta_binomial_pmf(const hr_model* model, hr_beta_prior prior, int32_t d, double* out);
HR_API hr_status hr_bayes_expected_loss(const hr_model* model, hr_beta_prior prior, int32_t m, double* out);
HR_API hr_status hr_bayes_optimal(const hr_model* model, hr_beta_prior prior, int32_t m_max, int32_t* m_star,
                                  double* expected_loss);
HR_API hr_status hr_loss_exceedance(const hr_model* model, hr_beta_prior prior, int32_t m, double threshold,
                                    double* out);
/* thresholds ascending; out has `count` entries. */
HR_API hr_status hr_exceedance_curve(const hr_model* model, hr_beta_prior prior, int32_t m, const double* thresholds,
                                     size_t count, double* out);
/* out is row-major [s][t] with s_count * t_count entries; invalid cells are NaN. */
HR_API hr_status hr_sensitivity_grid(const hr_model* model, const double* t_values, size_t t_count,
                                     const double* s_values, size_t s_count, int32_t m, double threshold,
                                     double* out);

/* Info-gap analysis. */
HR_API hr_status hr_worst_case_loss(const hr_model* model, int32_t m, double h, double* out,
                                    int32_t* interior_exceeds_endpoint);
HR_API hr_status hr_robustness(const hr_model* model, int32_t m, double critical_cost, hr_robustness_point* out);
HR_API hr_status hr_robustness_curve(const hr_model* model, int32_t m, const double* critical_costs, size_t count,
                                     hr_robustness_point* out);
/* Writes the argmax set into `argmax` (capacity `capacity`), its size into
 * `count`; HR_ERR_BUFFER_TOO_SMALL leaves `count` set to the needed size. */
HR_API hr_status hr_infogap_optimal(const hr_model* model, double critical_cost, int32_t* argmax, size_t capacity,
                                    size_t* count, double* h_hat, int32_t* saturated);

/* Imprecise-probability analysis. */
HR_API hr_status hr_dominance_margin(const hr_model* model, int32_t m, int32_t m_prime, double h, double* out);
HR_API hr_status hr_maximality_score(const hr_model* model, int32_t m, double h, double* out);
/* out is row-major [m][h], (m_max + 1) * h_count entries, utiles. */
HR_API hr_status hr_maximality_table(const hr_model* model, const double* h_values, size_t h_count, double* out);
HR_API hr_status hr_maximal_set(const hr_model* model, double h, int32_t* members, size_t capacity, size_t* count);
HR_API hr_status hr_gamma_minimax(const hr_model* model, double h, int32_t* members, size_t capacity,
                                  size_t* count);

/* Theorem harness report as a JSON document (caller frees with
 * hr_string_free). */
HR_API hr_status hr_theorem_report_json(const hr_model* model, const double* horizons, size_t h_count,
                                        int32_t h_prime_interior, char** out);
HR_API void hr_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* HERDRISK_H */
