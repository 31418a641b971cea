#include <doctest.h>

#include <cmath>
#include <vector>

#include "herdrisk/bayes.hpp"
#include "herdrisk/error.hpp"
#include "herdrisk/infogap.hpp"
#include "oracles.hpp"

using namespace herdrisk;

namespace {

const LossModel& model() {
  static const LossModel instance(ProblemConfig{}, 30);
  return instance;
}

const double kCosts[] = {0.5e6, 1.0e6, 1.5e6, 2.0e6, 2.5e6, 3.0e6, 3.5e6, 4.0e6};
const int kMStar[] = {2, 4, 5, 6, 8, 10, 11, 13};
const double kHorizon1e3[] = {0.207, 0.426, 0.661, 0.912, 1.184, 1.479, 1.803, 2.163};

}  // namespace

TEST_SUITE("infogap") {

TEST_CASE("worst-case loss") {
  for (int m : {0, 5, 30}) {
    CHECK(worst_case_loss(model(), m, 0.0).value == model().expected_loss(m, 0.0));
  }
  CHECK(worst_case_loss(model(), 10, 0.001479).value == doctest::Approx(3.0e6).epsilon(0.005));
  CHECK_THROWS_AS(worst_case_loss(model(), 10, -1e-3), DomainError);
  CHECK_THROWS_AS(worst_case_loss(model(), 10, 0.06), DomainError);
}

TEST_CASE("worst-case loss against dense grid oracle") {
  for (int m : {1, 10, 30}) {
    for (double h : {0.0005, 0.002, 0.0096, 0.02, 0.05}) {
      const auto got = worst_case_loss(model(), m, h);
      const double grid = oracle::grid_max([&](double r) { return model().expected_loss(m, r); }, 0.0, h, 4001);
      CHECK(got.value >= grid * (1.0 - 1e-12));
      CHECK(got.value <= grid * (1.0 + 1e-6));
      CHECK(got.argmax >= 0.0);
      CHECK(got.argmax <= h);
    }
  }
  // m = 30 turns over below r = 0.01, so the endpoint is not the maximum there.
  CHECK(worst_case_loss(model(), 30, 0.02).interior_exceeds_endpoint);
  CHECK_FALSE(worst_case_loss(model(), 30, 0.002).interior_exceeds_endpoint);
}

TEST_CASE("robustness at tabulated levels") {
  auto r10 = robustness(model(), 10, 3.0e6);
  CHECK(r10.status == RobustnessStatus::feasible);
  CHECK(std::abs(r10.h_hat - 1.479e-3) < 1e-6);
  auto r2 = robustness(model(), 2, 0.5e6);
  CHECK(std::abs(r2.h_hat - 0.207e-3) < 1e-6);
  auto r0 = robustness(model(), 0, 500.0);
  CHECK(r0.status == RobustnessStatus::infeasible);
  CHECK(std::isnan(r0.h_hat));
  CHECK_FALSE(r0.feasible());
}

TEST_CASE("robustness saturates above the trusted range") {
  const auto r = robustness(model(), 1, 1.0e8);
  CHECK(r.status == RobustnessStatus::saturated);
  CHECK(r.h_hat == InfoGapSettings{}.h_max);
}

TEST_CASE("robustness round trip") {
  for (int m : {1, 4, 10, 15, 30}) {
    for (double lc : {0.9e6, 2.0e6, 4.0e6, 6.5e6}) {
      const auto r = robustness(model(), m, lc);
      if (r.status != RobustnessStatus::feasible) continue;
      CHECK(worst_case_loss(model(), m, r.h_hat).value == doctest::Approx(lc).epsilon(1e-6));
      // Just past the horizon the level is exceeded.
      CHECK(worst_case_loss(model(), m, r.h_hat + 1e-7).value > lc);
    }
  }
}

TEST_CASE("robustness non-decreasing in critical cost") {
  std::vector<double> costs;
  for (int k = 0; k <= 142; ++k) costs.push_back(k * 0.05e6);
  for (int m : {0, 1, 2, 10, 15, 30}) {
    const auto curve = robustness_curve(model(), m, costs);
    REQUIRE(curve.size() == costs.size());
    double prev = -1.0;
    for (const auto& point : curve) {
      if (!point.feasible()) {
        CHECK(prev < 0.0);  // infeasible only below the first feasible level
        continue;
      }
      CHECK(point.h_hat >= prev - 1e-12);
      prev = point.h_hat;
    }
  }
  std::vector<double> descending{2.0e6, 1.0e6};
  CHECK_THROWS_AS(robustness_curve(model(), 1, descending), DomainError);
  CHECK_THROWS_AS(robustness_curve(model(), 1, std::vector<double>{}), DomainError);
}

TEST_CASE("robustness curves of m = 1 and m = 15 cross") {
  const double low = 1.5e6;
  const double high = 6.0e6;
  const auto r1_low = robustness(model(), 1, low);
  const auto r15_low = robustness(model(), 15, low);
  const auto r1_high = robustness(model(), 1, high);
  const auto r15_high = robustness(model(), 15, high);
  CHECK(r15_low.h_hat < r1_low.h_hat);
  CHECK(r15_high.h_hat > r1_high.h_hat);
}

TEST_CASE("info-gap optimum per critical cost") {
  for (int i = 0; i < 8; ++i) {
    const auto sol = infogap_optimal(model(), kCosts[i]);
    CHECK(sol.m_star() == kMStar[i]);
    CHECK(sol.argmax.size() == 1);
    CHECK(std::abs(sol.h_hat * 1e3 - kHorizon1e3[i]) <= 0.002);
    CHECK_FALSE(sol.saturated);
  }
  CHECK_THROWS_AS(infogap_optimal(model(), 50.0), NoSolutionError);
  CHECK_THROWS_AS(infogap_optimal(model(), 1e6, 31), DomainError);
}

TEST_CASE("info-gap and bayes agree at matched scale") {
  const auto sol = infogap_optimal(model(), 3.0e6);
  const auto bayes = optimal_m_bayes(prior_from_moments(0.0016, 0.001), model().config(), 30);
  CHECK(sol.m_star() == bayes.m_star);
}

TEST_CASE("ties are reported as a set") {
  // Flat testing cost and no outbreak or termination cost: every m has the
  // same loss.
  ProblemParams params;
  params.cost = {5000.0, 0.0, 0.0};
  params.a = 0.0;
  params.t_per_animal = 0.0;
  const LossModel flat(ProblemConfig(params), 3);
  const auto sol = infogap_optimal(flat, 6000.0);
  CHECK(sol.argmax == std::vector<int>{0, 1, 2, 3});
  CHECK(sol.saturated);
}

}  // TEST_SUITE
