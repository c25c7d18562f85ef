#include <doctest.h>

#include <cmath>

#include "lpc/bounds.hpp"
#include "lpc/errors.hpp"
#include "lpc/learning.hpp"
#include "lpc/prediction.hpp"
#include "support.hpp"

using namespace lpc;

TEST_SUITE("learning") {

TEST_CASE("label-indicator problem with a pinned marginal") {
  // k=0, |Y|=2, a=b=(0.7, 0.3): the best rule picks the majority label, so
  // the optimum is 0.7 and R = 0.3
  auto table = PatternTable::full_enumeration(2, 0);
  std::vector<double> tau = {0.7, 0.3};
  auto interval = point_interval(tau);

  auto lp = build_learning_lp(table, interval);
  CHECK(lp.num_rows() == 3);  // r (2^|Y|-1) = 1 * 3
  CHECK(lp.num_vars() == 5);  // 2m + 1

  auto dual = solve_learning(table, interval);
  CHECK(dual.value == doctest::Approx(0.7).epsilon(1e-9));
  CHECK(dual.minimax_risk == doctest::Approx(0.3).epsilon(1e-9));

  // independent primal route
  CHECK(primal_minimax_value(table, interval) == doctest::Approx(0.7).epsilon(1e-9));

  // the optimal rule is the deterministic argmax of the pinned marginal
  auto rule = rule_for_pattern(dual, table, 0);
  CHECK(rule.probs[0] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(rule.probs[1] == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("unconstrained surrogate risk is 1 - 1/|Y|") {
  for (int labels = 2; labels <= 4; ++labels) {
    auto table = PatternTable::full_enumeration(labels, 1);
    UncertaintyInterval box;
    const auto m = static_cast<std::size_t>(table.m());
    box.tau_n.assign(m, 0.5);
    box.a.assign(m, 0.0);
    box.b.assign(m, 1.0);
    box.s.assign(m, 0.0);
    auto dual = solve_learning(table, box);
    CHECK(dual.minimax_risk == doctest::Approx(1.0 - 1.0 / labels).epsilon(1e-9));
  }
}

TEST_CASE("constraint count is r(2^|Y|-1)") {
  auto table = PatternTable::full_enumeration(3, 3);
  REQUIRE(table.size() == 27);
  std::vector<double> tau(static_cast<std::size_t>(table.m()), 1.0 / 81.0);
  auto lp = build_learning_lp_point(table, tau);
  CHECK(lp.num_rows() == 27 * 7);
  CHECK(lp.num_vars() == 82);  // m + 1 vs 2m + 1 for the interval form
  auto lp_interval = build_learning_lp(table, point_interval(tau));
  CHECK(lp_interval.num_vars() == 163);
}

TEST_CASE("point estimate pinning a deterministic labeling gives zero risk") {
  // tau puts all mass on (y=1, pattern 0): the rule that always answers 1 on
  // pattern 0 is never wrong inside the uncertainty set
  auto table = PatternTable::full_enumeration(2, 1);
  std::vector<double> tau(4, 0.0);
  tau[static_cast<std::size_t>(table.column(0, 1))] = 1.0;
  auto dual = solve_learning(table, point_interval(tau));
  CHECK(dual.value == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(dual.minimax_risk == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("interval form with a = b matches the point form") {
  Rng rng(31);
  for (int it = 0; it < 50; ++it) {
    auto inst = testing::random_pattern_instance(rng, false);
    auto point = solve_learning(inst.table, inst.interval);

    // force the interval path by perturbing b with zero width
    auto interval = inst.interval;
    interval.b = interval.tau_n;
    interval.a = interval.tau_n;
    auto lp = build_learning_lp(inst.table, interval);
    auto sol = solve(lp);
    REQUIRE(sol.optimal());
    CHECK(sol.value == doctest::Approx(point.value).epsilon(1e-8));
  }
}

TEST_CASE("strong duality against the independent primal route") {
  Rng rng(37);
  for (int it = 0; it < 100; ++it) {
    auto inst = testing::random_pattern_instance(rng, false);
    auto dual = solve_learning(inst.table, inst.interval);
    double primal = primal_minimax_value(inst.table, inst.interval);
    CHECK(dual.value == doctest::Approx(primal).epsilon(1e-6));
  }
}

TEST_CASE("nested intervals cannot increase the minimax risk") {
  Rng rng(41);
  for (int it = 0; it < 50; ++it) {
    auto inst = testing::random_pattern_instance(rng, true);
    auto inner = inst.interval;
    // shrink toward tau: [a', b'] inside [a, b]
    for (std::size_t j = 0; j < inner.a.size(); ++j) {
      inner.a[j] = inner.tau_n[j] - 0.5 * (inner.tau_n[j] - inner.a[j]);
      inner.b[j] = inner.tau_n[j] + 0.5 * (inner.b[j] - inner.tau_n[j]);
    }
    auto wide = solve_learning(inst.table, inst.interval);
    auto narrow = solve_learning(inst.table, inner);
    CHECK(narrow.minimax_risk <= wide.minimax_risk + 1e-9);
  }
}

TEST_CASE("risk range respects the uniform-rule floor") {
  Rng rng(43);
  for (int it = 0; it < 30; ++it) {
    auto inst = testing::random_pattern_instance(rng, it % 2 == 0);
    auto dual = solve_learning(inst.table, inst.interval);
    CHECK(dual.minimax_risk >= -1e-12);
    CHECK(dual.minimax_risk <= 1.0 - 1.0 / inst.table.num_labels() + 1e-9);
  }
}

TEST_CASE("dual solution satisfies the norm constraints") {
  Rng rng(47);
  for (int it = 0; it < 30; ++it) {
    auto inst = testing::random_pattern_instance(rng, it % 3 == 0);
    auto dual = solve_learning(inst.table, inst.interval);
    for (std::size_t i = 0; i < inst.table.size(); ++i) {
      double total = 0.0;
      for (int y = 0; y < inst.table.num_labels(); ++y)
        total += std::max(dual.lambda[static_cast<std::size_t>(inst.table.column(i, y))] + dual.gamma, 0.0);
      CHECK(total <= 1.0 + 1e-8);
    }
  }
}

TEST_CASE("approx mode with full pattern coverage matches exact mode") {
  // training features realize both patterns of a knn(1) split
  std::vector<double> anchor_feats = {0.0, 10.0};
  LabeledDataset anchors(anchor_feats, 1, {0, 1}, {"0", "1"});
  auto knn = BaseClassifier::fit(KnnConfig{1}, anchors);
  GeneratingFunction gf(2, {knn});

  std::vector<double> feats = {0.1, 0.2, 9.9, 10.2};
  LabeledDataset data(feats, 1, {0, 0, 1, 1}, {"0", "1"});
  std::vector<double> tau(4, 0.25);
  auto interval = point_interval(tau);

  auto exact = train(gf, interval, PatternMode::Exact, data);
  auto approx = train(gf, interval, PatternMode::Approx, data);
  CHECK(exact.patterns.size() == approx.patterns.size());
  CHECK(exact.minimax_risk() == doctest::Approx(approx.minimax_risk()).epsilon(1e-9));
}

TEST_CASE("empty uncertainty set surfaces as a typed error") {
  // approx table missing the pattern tau needs
  auto table = PatternTable::from_patterns(2, 1, {{0}});
  std::vector<double> tau(4, 0.0);
  tau[1] = 1.0;  // ind((0,1)): needs pattern (1)
  CHECK_THROWS_AS(solve_learning(table, point_interval(tau)), EmptyUncertaintySet);
}

TEST_CASE("dimension mismatches are rejected") {
  auto table = PatternTable::full_enumeration(2, 1);
  std::vector<double> tau = {0.5, 0.5};  // wrong length (m = 4)
  CHECK_THROWS_AS(build_learning_lp_point(table, tau), UsageError);
  CHECK_THROWS_AS(build_learning_lp(table, point_interval(tau)), UsageError);

  UncertaintyInterval bad;
  bad.tau_n.assign(4, 0.25);
  bad.a.assign(4, 0.5);
  bad.b.assign(4, 0.4);  // a > b
  bad.s.assign(4, 0.0);
  CHECK_THROWS_AS(build_learning_lp(table, bad), UsageError);
}

}  // TEST_SUITE
