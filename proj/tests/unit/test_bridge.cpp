#include <doctest.h>

#include <memory>
#include <vector>

#include "herdrisk/bridge.hpp"
#include "herdrisk/error.hpp"

using namespace herdrisk;

namespace {

std::shared_ptr<const LossModel> shared_model() {
  static const auto instance = std::make_shared<const LossModel>(ProblemConfig{}, 30);
  return instance;
}

const std::vector<PrevisionCurve>& herd() {
  static const auto curves = herd_curves(shared_model());
  return curves;
}

DecisionSet indices(std::size_t lo, std::size_t hi) {
  DecisionSet out;
  for (std::size_t i = lo; i <= hi; ++i) out.push_back(i);
  return out;
}

PrevisionCurve linear(std::string label, double intercept, double slope) {
  return PrevisionCurve::piecewise_linear(std::move(label), {{0.0, true, intercept, slope}});
}

}  // namespace

TEST_SUITE("bridge") {

TEST_CASE("counterexample curves") {
  const auto cx1 = make_counterexample(1);
  REQUIRE(cx1.size() == 2);
  CHECK(cx1[0].label() == "d1");
  CHECK(cx1[1].label() == "d2");
  CHECK(cx1[0].eval(1.0) == 1.0);
  CHECK(cx1[0].eval(1.0 + 1e-12) > 3.0);
  CHECK(cx1[1].eval(0.5) == 1.5);
  CHECK(cx1[1].eval(2.0) == 6.0);
  const auto cx2 = make_counterexample(2);
  CHECK(cx2[1].eval(2.0) == 0.0);
  CHECK(cx2[0].eval(1.5) == 0.5);
  CHECK(cx2[1].eval(3.0) == 1.0);
  CHECK_THROWS_AS(make_counterexample(3), DomainError);
  CHECK_THROWS_AS(make_counterexample(0), DomainError);
}

TEST_CASE("piecewise construction enforces a non-decreasing curve") {
  CHECK_THROWS_AS(PrevisionCurve::piecewise_linear("down", {{0.0, true, 1.0, -1.0}}), DomainError);
  CHECK_THROWS_AS(PrevisionCurve::piecewise_linear("drop", {{1.0, false, 5.0, 0.0}, {0.0, true, 1.0, 0.0}}),
                  DomainError);
  CHECK_THROWS_AS(PrevisionCurve::piecewise_linear("open", {{1.0, false, 0.0, 1.0}}), DomainError);
  CHECK_THROWS_AS(PrevisionCurve::piecewise_linear("empty", {}), DomainError);
  CHECK_NOTHROW(linear("flat", 2.0, 0.0));
}

TEST_CASE("piecewise horizons are exact") {
  const auto cx1 = make_counterexample(1);
  CHECK(cx1[0].horizon(3.0).h_hat == 1.0);
  CHECK(cx1[1].horizon(3.0).h_hat == 1.0);
  CHECK(cx1[0].horizon(5.0).h_hat == 2.0);
  CHECK(cx1[0].horizon(0.25).h_hat == 0.25);
  CHECK(cx1[1].horizon(0.5).status == HorizonResult::Status::infeasible);
  const auto cx2 = make_counterexample(2);
  CHECK(cx2[0].horizon(0.0).h_hat == 1.0);
  CHECK(cx2[1].horizon(0.0).h_hat == 2.0);
  CHECK(linear("flat", 2.0, 0.0).horizon(2.0).status == HorizonResult::Status::unbounded);
}

TEST_CASE("lstar") {
  const auto cx1 = make_counterexample(1);
  const auto cx2 = make_counterexample(2);
  CHECK(lstar(cx1, 0.5) == 0.5);
  CHECK(lstar(cx2, 1.0) == 0.0);
  const std::vector<PrevisionCurve> one{linear("only", 3.0, 2.0)};
  CHECK(lstar(one, 1.5) == 6.0);
  CHECK_THROWS_AS(lstar(std::vector<PrevisionCurve>{}, 0.0), DomainError);
  for (const auto* curves : {&cx1, &cx2}) {
    double prev = lstar(*curves, 0.0);
    for (int k = 1; k <= 400; ++k) {
      const double cur = lstar(*curves, k * 0.01);
      CHECK(cur >= prev);
      prev = cur;
    }
  }
}

TEST_CASE("right derivative probe") {
  const auto cx2 = make_counterexample(2);
  const auto flat = right_derivative_positive(cx2, 1.0);
  CHECK_FALSE(flat.positive);
  CHECK(flat.steps == std::vector<double>{1e-2, 1e-4, 1e-6});
  CHECK(flat.estimates.size() == 3);

  const std::vector<PrevisionCurve> rising{linear("a", 0.0, 2.0), linear("b", 1.0, 0.5)};
  const auto probe = right_derivative_positive(rising, 0.3);
  CHECK(probe.positive);
  CHECK(probe.estimates_agree);

  const auto herd_probe = right_derivative_positive(herd(), 1e-3);
  CHECK(herd_probe.positive);

  CHECK_THROWS_AS(right_derivative_positive(herd(), 0.045), DomainError);
  const std::vector<double> steps{1e-3, 1e-5};
  CHECK(right_derivative_positive(herd(), 0.045, steps).steps == steps);
}

TEST_CASE("abstract info-gap solution") {
  const auto cx1 = make_counterexample(1);
  const auto cx2 = make_counterexample(2);
  CHECK(infogap_solution_abstract(cx1, 3.0) == DecisionSet{0, 1});
  CHECK(infogap_solution_abstract(cx2, 0.0) == DecisionSet{1});
  CHECK(infogap_solution_abstract(herd(), 3.0e6) == DecisionSet{10});
  CHECK_THROWS_AS(infogap_solution_abstract(cx1, -1.0), NoSolutionError);
}

TEST_CASE("abstract gamma-minimax") {
  CHECK(gamma_minimax_abstract(make_counterexample(1), 1.0) == DecisionSet{0});
  CHECK(gamma_minimax_abstract(make_counterexample(2), 1.0) == DecisionSet{0, 1});
  CHECK(gamma_minimax_abstract(herd(), 1.479e-3) == DecisionSet{10});
}

TEST_CASE("theorem 1 on the herd model") {
  const auto v = theorem1_check(herd(), 1.479e-3);
  CHECK(v.conditions_hold);
  CHECK(v.level_matches);
  CHECK(v.sets_equal);
  CHECK(v.infogap == DecisionSet{10});
  CHECK(v.gamma_minimax == DecisionSet{10});
  CHECK(v.consistent());
}

TEST_CASE("theorem 1 on the counterexamples") {
  const auto cx1 = make_counterexample(1);
  // At h = 1 the level L*(1) = 1 is attained and both rules pick d1.
  const auto attained = theorem1_check(cx1, 1.0);
  CHECK(attained.lstar_value == 1.0);
  CHECK(attained.sets_equal);
  // The level 3 is never L*(h): L* jumps from 1 to above 3 at h = 1.
  const auto v1 = theorem1_check(cx1, 1.0, 3.0);
  CHECK_FALSE(v1.conditions_hold);
  CHECK_FALSE(v1.level_matches);
  CHECK(v1.infogap == DecisionSet{0, 1});
  CHECK(v1.gamma_minimax == DecisionSet{0});
  CHECK_FALSE(v1.sets_equal);
  CHECK(v1.consistent());

  const auto v2 = theorem1_check(make_counterexample(2), 1.0);
  CHECK_FALSE(v2.conditions_hold);
  CHECK_FALSE(v2.derivative.positive);
  CHECK(v2.gamma_minimax == DecisionSet{0, 1});
  CHECK(v2.infogap == DecisionSet{1});
  CHECK_FALSE(v2.sets_equal);
}

TEST_CASE("theorem 2 on the herd model") {
  const auto oracle = herd_difference_oracle(shared_model());
  const double h = 1.479e-3;
  const auto v = theorem2_check(herd(), oracle, h, default_h_prime_grid(h));
  CHECK(v.h_primes.size() == 22);
  CHECK(v.hypothesis_holds);
  CHECK(v.infogap_union == indices(1, 10));
  CHECK(v.maximal == indices(1, 10));
  CHECK(v.inclusion);
  CHECK(v.equality);

  const double small = 0.207e-3;
  const auto w = theorem2_check(herd(), oracle, small, default_h_prime_grid(small));
  CHECK(w.inclusion);
  for (std::size_t d : w.infogap_union) CHECK((d == 1 || d == 2));
}

TEST_CASE("theorem 2 with a single decision") {
  const std::vector<PrevisionCurve> one{linear("only", 1.0, 1.0)};
  const DifferencePrevisionOracle zero([](std::size_t, std::size_t, double) { return 0.0; });
  const auto v = theorem2_check(one, zero, 1.0, default_h_prime_grid(1.0, 5));
  CHECK(v.infogap_union == DecisionSet{0});
  CHECK(v.maximal == DecisionSet{0});
  CHECK(v.inclusion);
  CHECK(v.equality);
}

TEST_CASE("difference oracle and h' grid") {
  const DifferencePrevisionOracle oracle([](std::size_t, std::size_t, double) { return 5.0; });
  CHECK(oracle(2, 2, 1.0) == 0.0);
  CHECK(oracle(1, 2, 1.0) == 5.0);
  const auto herd_oracle = herd_difference_oracle(shared_model());
  CHECK(herd_oracle(4, 4, 1e-3) == 0.0);
  CHECK(herd_oracle(0, 1, 0.207e-3) < 0.0);
  CHECK(herd_oracle(2, 0, 0.207e-3) > 0.0);

  const auto grid = default_h_prime_grid(2.0, 3);
  CHECK(grid == std::vector<double>{0.0, 0.5, 1.0, 1.5, 2.0});
  CHECK_THROWS_AS(theorem2_check(make_counterexample(1), oracle, 1.0, std::vector<double>{0.5, 1.5}), DomainError);
}

TEST_CASE("herd adapter matches worst-case loss") {
  const auto& curves = herd();
  REQUIRE(curves.size() == 31);
  CHECK(curves[7].label() == "m=7");
  CHECK(curves[7].eval(1e-3) == worst_case_loss(*shared_model(), 7, 1e-3).value);
  CHECK(curves[7].domain_max() == InfoGapSettings{}.h_max);
  const auto r = curves[10].horizon(3.0e6);
  CHECK(r.h_hat == doctest::Approx(robustness(*shared_model(), 10, 3.0e6).h_hat).epsilon(1e-12));
}

}  // TEST_SUITE
