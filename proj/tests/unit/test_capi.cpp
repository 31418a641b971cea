#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include <json.hpp>

#include "herdrisk/herdrisk.h"

namespace {

struct Model {
  hr_model* handle = nullptr;
  Model() {
    hr_problem_params params;
    hr_problem_params_default(&params);
    hr_settings settings;
    hr_settings_default(&settings);
    REQUIRE(hr_model_create(&params, &settings, &handle) == HR_OK);
  }
  ~Model() { hr_model_destroy(handle); }
};

}  // namespace

TEST_CASE("defaults and version") {
  hr_problem_params params;
  hr_problem_params_default(&params);
  CHECK(params.n == 250);
  CHECK(params.p == 0.9999);
  CHECK(params.q == 0.999);
  CHECK(params.a == 1.0e7);
  CHECK(params.t_per_animal == 400.0);
  hr_settings settings;
  hr_settings_default(&settings);
  CHECK(settings.m_max == 30);
  CHECK(settings.h_max == 0.05);
  CHECK(settings.tolerance == 1e-9);
  CHECK(settings.grid_points == 64);
  CHECK(std::string(hr_version()) == "1.0.0");
  CHECK(std::string(hr_status_string(HR_ERR_DOMAIN)).size() > 0);
}

TEST_CASE("model creation errors") {
  hr_problem_params params;
  hr_problem_params_default(&params);
  hr_settings settings;
  hr_settings_default(&settings);
  hr_model* model = nullptr;
  CHECK(hr_model_create(nullptr, &settings, &model) == HR_ERR_NULL_ARGUMENT);
  CHECK(hr_model_create(&params, &settings, nullptr) == HR_ERR_NULL_ARGUMENT);
  params.p = 2.0;
  CHECK(hr_model_create(&params, &settings, &model) == HR_ERR_DOMAIN);
  CHECK(model == nullptr);
  CHECK(std::strlen(hr_last_error()) > 0);
  hr_problem_params_default(&params);
  settings.m_max = 300;
  CHECK(hr_model_create(&params, &settings, &model) == HR_ERR_DOMAIN);
  hr_model_destroy(nullptr);
}

TEST_CASE("loss kernels through the C interface") {
  Model m;
  double v = 0.0;
  REQUIRE(hr_test_cost(m.handle, 10, &v) == HR_OK);
  CHECK(v == 81000.0);
  REQUIRE(hr_hypergeometric_pmf(5, 2, 2, 1, &v) == HR_OK);
  CHECK(v == doctest::Approx(0.6));
  REQUIRE(hr_binomial_pmf(2, 1, 0.25, &v) == HR_OK);
  CHECK(v == doctest::Approx(0.375));
  REQUIRE(hr_prob_pass(m.handle, 250, 0, &v) == HR_OK);
  CHECK(v == doctest::Approx(std::pow(0.999, 250)).epsilon(1e-12));
  hr_loss_breakdown b;
  REQUIRE(hr_conditional_loss(m.handle, 10, 1, &b) == HR_OK);
  CHECK(b.expected_loss == doctest::Approx(9590425.7865357255713).epsilon(1e-12));
  CHECK(b.prob_pass + b.prob_termination == doctest::Approx(1.0));
  REQUIRE(hr_expected_loss_given_r(m.handle, 5, 0.0005, &v) == HR_OK);
  CHECK(v == doctest::Approx(1161341.6273187665761).epsilon(1e-12));
  CHECK(hr_expected_loss_given_r(m.handle, 5, 1.5, &v) == HR_ERR_DOMAIN);
  CHECK(hr_prob_pass(m.handle, 251, 0, &v) == HR_ERR_DOMAIN);
  CHECK(hr_test_cost(nullptr, 1, &v) == HR_ERR_NULL_ARGUMENT);
}

TEST_CASE("bayesian analysis through the C interface") {
  Model m;
  hr_beta_prior prior;
  REQUIRE(hr_prior_from_moments(0.0016, 0.001, &prior) == HR_OK);
  CHECK(prior.alpha + prior.beta == doctest::Approx(1596.44));
  CHECK(hr_prior_from_moments(0.5, 0.5, &prior) == HR_ERR_INFEASIBLE_MOMENTS);
  REQUIRE(hr_prior_from_moments(0.0016, 0.001, &prior) == HR_OK);
  int32_t m_star = -1;
  double loss = 0.0;
  REQUIRE(hr_bayes_optimal(m.handle, prior, 30, &m_star, &loss) == HR_OK);
  CHECK(m_star == 10);
  CHECK(loss == doctest::Approx(3.002e6).epsilon(0.005));
  double v = 0.0;
  REQUIRE(hr_bayes_expected_loss(m.handle, prior, 10, &v) == HR_OK);
  CHECK(v == loss);
  REQUIRE(hr_beta_binomial_pmf(m.handle, prior, 0, &v) == HR_OK);
  CHECK(v < 0.7);
  REQUIRE(hr_loss_exceedance(m.handle, prior, 10, 182000.0, &v) == HR_OK);
  CHECK(v == doctest::Approx(0.292).epsilon(0.003 / 0.292));

  const double thresholds[] = {0.0, 81000.0, 182000.0, 2e7};
  double out[4];
  REQUIRE(hr_exceedance_curve(m.handle, prior, 10, thresholds, 4, out) == HR_OK);
  CHECK(out[0] == 1.0);
  CHECK(out[2] == doctest::Approx(v));
  CHECK(out[3] == 0.0);

  const double ts[] = {0.0002, 1.5};
  const double ss[] = {200.0};
  double cells[2];
  REQUIRE(hr_sensitivity_grid(m.handle, ts, 2, ss, 1, 10, 182000.0, cells) == HR_OK);
  CHECK(cells[0] == doctest::Approx(0.030).epsilon(0.002 / 0.030));
  CHECK(std::isnan(cells[1]));
}

TEST_CASE("info-gap analysis through the C interface") {
  Model m;
  double v = 0.0;
  int32_t interior = -1;
  REQUIRE(hr_worst_case_loss(m.handle, 10, 0.001479, &v, &interior) == HR_OK);
  CHECK(v == doctest::Approx(3.0e6).epsilon(0.005));
  CHECK(interior == 0);
  CHECK(hr_worst_case_loss(m.handle, 10, 0.5, &v, &interior) == HR_ERR_DOMAIN);

  hr_robustness_point r;
  REQUIRE(hr_robustness(m.handle, 10, 3.0e6, &r) == HR_OK);
  CHECK(r.status == HR_ROBUST_FEASIBLE);
  CHECK(std::abs(r.h_hat - 1.479e-3) < 1e-6);
  const double h10 = r.h_hat;
  REQUIRE(hr_robustness(m.handle, 0, 500.0, &r) == HR_OK);
  CHECK(r.status == HR_ROBUST_INFEASIBLE);
  CHECK(std::isnan(r.h_hat));

  const double costs[] = {1.0e6, 2.0e6, 3.0e6};
  hr_robustness_point curve[3];
  REQUIRE(hr_robustness_curve(m.handle, 10, costs, 3, curve) == HR_OK);
  CHECK(curve[2].h_hat == h10);
  CHECK(curve[0].h_hat <= curve[1].h_hat);

  int32_t argmax[31];
  size_t count = 0;
  double h_hat = 0.0;
  int32_t saturated = -1;
  REQUIRE(hr_infogap_optimal(m.handle, 2.5e6, argmax, 31, &count, &h_hat, &saturated) == HR_OK);
  CHECK(count == 1);
  CHECK(argmax[0] == 8);
  CHECK(std::abs(h_hat * 1e3 - 1.184) <= 0.002);
  CHECK(saturated == 0);
  CHECK(hr_infogap_optimal(m.handle, 50.0, argmax, 31, &count, &h_hat, &saturated) == HR_ERR_NO_SOLUTION);
  CHECK(hr_infogap_optimal(m.handle, 2.5e6, argmax, 0, &count, &h_hat, &saturated) == HR_ERR_BUFFER_TOO_SMALL);
  CHECK(count == 1);
}

TEST_CASE("imprecise analysis through the C interface") {
  Model m;
  double v = 0.0;
  REQUIRE(hr_dominance_margin(m.handle, 1, 0, 0.20679121616922208e-3, &v) == HR_OK);
  CHECK(v > 0.0);
  REQUIRE(hr_maximality_score(m.handle, 15, 0.20679121616922208e-3, &v) == HR_OK);
  CHECK(std::abs(v / 1e3 + 163.7) <= 0.05);

  const double hs[] = {0.20679121616922208e-3, 1.479e-3};
  std::vector<double> table(31 * 2);
  REQUIRE(hr_maximality_table(m.handle, hs, 2, table.data()) == HR_OK);
  CHECK(table[15 * 2 + 0] == doctest::Approx(v));

  int32_t members[31];
  size_t count = 0;
  REQUIRE(hr_maximal_set(m.handle, 1.479e-3, members, 31, &count) == HR_OK);
  REQUIRE(count == 10);
  for (size_t i = 0; i < count; ++i) CHECK(members[i] == static_cast<int32_t>(i + 1));
  REQUIRE(hr_gamma_minimax(m.handle, 1.479e-3, members, 31, &count) == HR_OK);
  CHECK(count == 1);
  CHECK(members[0] == 10);
  CHECK(hr_maximal_set(m.handle, 1.479e-3, members, 3, &count) == HR_ERR_BUFFER_TOO_SMALL);
  CHECK(count == 10);
}

TEST_CASE("theorem report through the C interface") {
  Model m;
  const double hs[] = {1.4789761821703e-3};
  char* text = nullptr;
  REQUIRE(hr_theorem_report_json(m.handle, hs, 1, 4, &text) == HR_OK);
  REQUIRE(text != nullptr);
  const auto doc = nlohmann::json::parse(text);
  hr_string_free(text);
  CHECK(doc["herd_model"]["all_verdicts_hold"] == true);
  CHECK(doc["counterexample_1"]["theorem1"]["equality"] == false);
  CHECK(hr_theorem_report_json(m.handle, hs, 1, 4, nullptr) == HR_ERR_NULL_ARGUMENT);
}
