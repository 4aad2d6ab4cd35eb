#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "driftk/loss.hpp"
#include "driftk/runner.hpp"

using namespace driftk;

namespace {

RegressionScenarioConfig reg_cfg(double rho) {
  RegressionScenarioConfig sc;
  sc.d = 3;
  sc.rho = rho;
  sc.r_norm = 5.0;
  sc.psd_margin = 1.0;
  return sc;
}

RunSetup base_setup(const Scenario& scenario, const Loss& loss) {
  RunSetup s;
  s.scenario = &scenario;
  s.loss = &loss;
  s.bm.c_alpha = 16.0;
  s.bm.c_beta = 3.0;
  s.policy.kind = PolicyKind::no_update;
  s.policy.eps = 0.1;
  s.sgd.c = 1.0;
  s.sgd.k0 = 1.0;
  s.radius = 10.0;
  s.horizon = 10;
  s.t_test = 100;
  return s;
}

void check_equal_records(const RunResult& a, const RunResult& b, std::size_t count) {
  REQUIRE(a.records.size() >= count);
  REQUIRE(b.records.size() >= count);
  for (std::size_t i = 0; i < count; ++i) {
    const RunRecord& ra = a.records[i];
    const RunRecord& rb = b.records[i];
    CHECK(ra.n == rb.n);
    CHECK(ra.k_n == rb.k_n);
    CHECK(ra.rho_hat == rb.rho_hat);
    CHECK(ra.t_n == rb.t_n);
    CHECK(ra.eps_hat == rb.eps_hat);
    CHECK(ra.xi == rb.xi);
    CHECK(ra.excess_exact.has_value() == rb.excess_exact.has_value());
    if (ra.excess_exact && rb.excess_exact) CHECK(*ra.excess_exact == *rb.excess_exact);
    CHECK(ra.test_loss.has_value() == rb.test_loss.has_value());
    if (ra.test_loss && rb.test_loss) CHECK(*ra.test_loss == *rb.test_loss);
    CHECK(ra.auc.has_value() == rb.auc.has_value());
    if (ra.auc && rb.auc) CHECK(*ra.auc == *rb.auc);
    CHECK(ra.cum_cost == rb.cum_cost);
    CHECK(ra.saturated == rb.saturated);
    REQUIRE(ra.w.size() == rb.w.size());
    for (std::size_t j = 0; j < ra.w.size(); ++j) CHECK(ra.w[j] == rb.w[j]);
  }
}

} // namespace

TEST_CASE("same seed reproduces the run bit for bit") {
  const RegressionScenario scenario(reg_cfg(1.0));
  const QuadraticLoss loss(3, 0.0);
  RunSetup s = base_setup(scenario, loss);
  s.horizon = 5;
  const RunResult a = run_sequence(s, 99);
  const RunResult b = run_sequence(s, 99);
  REQUIRE(a.records.size() == 5);
  check_equal_records(a, b, 5);
  CHECK(a.warnings == b.warnings);
}

TEST_CASE("longer horizon extends the run without changing the prefix") {
  const RegressionScenario scenario(reg_cfg(1.0));
  const QuadraticLoss loss(3, 0.0);
  RunSetup s = base_setup(scenario, loss);
  s.horizon = 6;
  const RunResult shorter = run_sequence(s, 7);
  s.horizon = 10;
  const RunResult longer = run_sequence(s, 7);
  check_equal_records(shorter, longer, 6);
}

TEST_CASE("per-record invariants hold across policies and seeds") {
  const RegressionScenario scenario(reg_cfg(1.0));
  const QuadraticLoss loss(3, 0.0);
  for (PolicyKind kind : {PolicyKind::no_update, PolicyKind::update_past}) {
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
      RunSetup s = base_setup(scenario, loss);
      s.policy.kind = kind;
      s.cost.p0 = 2.0;
      s.cost.p1 = 0.5;
      const RunResult res = run_sequence(s, seed);
      REQUIRE(res.records.size() == 10);
      double spent = 0.0;
      for (std::size_t i = 0; i < res.records.size(); ++i) {
        const RunRecord& rec = res.records[i];
        CHECK(rec.n == static_cast<long>(i) + 1);
        CHECK(rec.k_n >= 0);
        CHECK(rec.xi == doctest::Approx(std::max(0.0, rec.eps_hat - s.policy.eps)));
        CHECK(norm(rec.w) <= s.radius + 1e-9);
        CHECK(rec.t_n ==
              doctest::Approx(rec.n >= 2 ? 1.0 / std::sqrt(static_cast<double>(rec.n - 1))
                                         : 0.0));
        spent += s.cost.p(rec.k_n);
        CHECK(rec.cum_cost == doctest::Approx(spent));
        CHECK(rec.excess_exact.has_value());
        CHECK(*rec.excess_exact >= -1e-12);
        CHECK(rec.test_loss.has_value());
        CHECK(!rec.auc.has_value()); // regression runs carry no AUC
      }
    }
  }
}

TEST_CASE("static problem lets the policy shed samples after warmup") {
  const RegressionScenario scenario(reg_cfg(0.0));
  const QuadraticLoss loss(3, 0.0);
  for (std::uint64_t seed : {11ULL, 12ULL, 13ULL}) {
    RunSetup s = base_setup(scenario, loss);
    const RunResult res = run_sequence(s, seed);
    const long k_init = invert_bound(s.bm, 2.0 * s.radius, s.policy.eps).k;
    CHECK(res.records[0].k_n == k_init);
    CHECK(res.records[1].k_n == k_init);
    for (std::size_t i = 2; i < res.records.size(); ++i) {
      CHECK(res.records[i].k_n >= 1);
      CHECK(res.records[i].k_n < k_init);
      CHECK(res.records[i].k_n <= 150); // rho ~ 0 plus slack, far below cold start
    }
    CHECK(res.warnings.empty());
    for (const RunRecord& rec : res.records) CHECK(!rec.saturated);
  }
}

TEST_CASE("forced schedule is replayed exactly and certified by the tracker") {
  const RegressionScenario scenario(reg_cfg(1.0));
  const QuadraticLoss loss(3, 0.0);
  RunSetup s = base_setup(scenario, loss);
  s.forced_schedule = {5, 0, 7, 0, 0, 3, 0, 0, 0, 2};
  s.rho_plan_init = 0.8; // no consecutive sampled pair, so this stays the drift bound
  s.cost.p0 = 4.0;
  s.cost.p1 = 1.0;
  const RunResult res = run_sequence(s, 21);
  REQUIRE(res.records.size() == 10);

  RiskTracker tracker(2.0 * s.radius);
  double spent = 0.0;
  for (std::size_t i = 0; i < res.records.size(); ++i) {
    const RunRecord& rec = res.records[i];
    CHECK(rec.k_n == s.forced_schedule[i]);
    tracker = tracker_advance(tracker, s.bm, 0.8, static_cast<double>(rec.k_n),
                              static_cast<long>(i) + 1);
    CHECK(rec.eps_hat == doctest::Approx(tracker.current));
    CHECK(rec.rho_hat == 0.0); // estimator never saw two sampled steps in a row
    spent += s.cost.p(rec.k_n);
    CHECK(rec.cum_cost == doctest::Approx(spent));
  }
}

TEST_CASE("known drift settles on the stationary count") {
  const RegressionScenario scenario(reg_cfg(1.0));
  const QuadraticLoss loss(3, 0.0);
  RunSetup s = base_setup(scenario, loss);
  s.policy.kind = PolicyKind::known_rho;
  s.policy.rho_known = 1.0;
  const RunResult res = run_sequence(s, 5);
  const long k_init = invert_bound(s.bm, 2.0 * s.radius, s.policy.eps).k;
  const long k_stationary = k_star(s.bm, 1.0, s.policy.eps).k;
  CHECK(res.records[0].k_n == k_init);
  CHECK(res.records[1].k_n == k_init);
  for (std::size_t i = 2; i < res.records.size(); ++i)
    CHECK(res.records[i].k_n == k_stationary);
}

TEST_CASE("baseline kinds expand to their schedules") {
  const RegressionScenario scenario(reg_cfg(1.0));
  const QuadraticLoss loss(3, 0.0);
  RunSetup s = base_setup(scenario, loss);
  s.policy.kind = PolicyKind::up_front;
  s.policy.total_samples = 60;
  s.horizon = 5;
  const RunResult up = run_sequence(s, 3);
  CHECK(up.records[0].k_n == 60);
  for (std::size_t i = 1; i < up.records.size(); ++i) CHECK(up.records[i].k_n == 0);

  s.policy.kind = PolicyKind::periodic;
  s.policy.delta_t = 2;
  const RunResult per = run_sequence(s, 3);
  // Steps 1, 3, 5 sample 20 each.
  CHECK(per.records[0].k_n == 20);
  CHECK(per.records[1].k_n == 0);
  CHECK(per.records[2].k_n == 20);
  CHECK(per.records[3].k_n == 0);
  CHECK(per.records[4].k_n == 20);
}

TEST_CASE("classification runs report auc but no exact excess") {
  ClassificationScenarioConfig cc;
  const ClassificationScenario scenario(cc);
  const SmoothedHingeLoss loss(2, 0.1);
  RunSetup s = base_setup(scenario, loss);
  s.bm.constants.m = 0.1; // curvature comes from the ridge term
  s.policy.eps = 0.5;
  s.horizon = 4;
  s.t_test = 200;
  const RunResult res = run_sequence(s, 17);
  for (const RunRecord& rec : res.records) {
    CHECK(!rec.excess_exact.has_value());
    CHECK(rec.test_loss.has_value());
    REQUIRE(rec.auc.has_value());
    CHECK(*rec.auc >= 0.0);
    CHECK(*rec.auc <= 1.0);
  }
}

TEST_CASE("disabling the test stream clears the held-out metrics") {
  const RegressionScenario scenario(reg_cfg(1.0));
  const QuadraticLoss loss(3, 0.0);
  RunSetup s = base_setup(scenario, loss);
  s.horizon = 3;
  s.t_test = 0;
  const RunResult res = run_sequence(s, 2);
  for (const RunRecord& rec : res.records) {
    CHECK(!rec.test_loss.has_value());
    CHECK(!rec.auc.has_value());
    CHECK(rec.excess_exact.has_value()); // exact metric needs no draws
  }
}

TEST_CASE("cost planning respects the budget and reproduces itself") {
  const RegressionScenario scenario(reg_cfg(1.0));
  const QuadraticLoss loss(3, 0.0);
  RunSetup s = base_setup(scenario, loss);
  s.policy.kind = PolicyKind::cost_plan;
  s.cost.p0 = 10.0;
  s.cost.p1 = 1.0;
  s.budget = 160.0;
  s.rho_plan_init = 1.0;
  s.horizon = 6;
  s.solver.iterations = 300;
  const RunResult a = run_sequence(s, 31);
  const RunResult b = run_sequence(s, 31);
  REQUIRE(a.records.size() == 6);
  CHECK(a.records.back().cum_cost <= s.budget + 1e-9);
  for (std::size_t i = 0; i < a.records.size(); ++i)
    CHECK(a.records[i].k_n == b.records[i].k_n);
}

TEST_CASE("setup validation rejects malformed runs") {
  const RegressionScenario scenario(reg_cfg(1.0));
  const QuadraticLoss loss(3, 0.0);
  const QuadraticLoss wrong_dim(4, 0.0);

  RunSetup s = base_setup(scenario, loss);
  s.horizon = 2;
  CHECK_THROWS_AS(run_sequence(s, 1), std::invalid_argument);

  s = base_setup(scenario, loss);
  s.policy.kind = PolicyKind::cost_plan; // budget left at zero
  CHECK_THROWS_AS(run_sequence(s, 1), std::invalid_argument);

  s = base_setup(scenario, loss);
  s.forced_schedule = {1, 2, 3}; // horizon is 10
  CHECK_THROWS_AS(run_sequence(s, 1), std::invalid_argument);

  s = base_setup(scenario, wrong_dim);
  CHECK_THROWS_AS(run_sequence(s, 1), std::invalid_argument);
}
