#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "driftk/loss.hpp"
#include "driftk/scenario.hpp"
#include "driftk/sgd.hpp"

using namespace driftk;

TEST_CASE("no samples means no movement") {
  const QuadraticLoss loss(2, 0.0);
  const SampleBatch empty(2);
  SgdConfig cfg;
  VecD w0{0.7, -0.3};
  const VecD w = sgd_pass(w0, empty, loss, cfg, 10.0);
  CHECK(w[0] == w0[0]);
  CHECK(w[1] == w0[1]);
}

TEST_CASE("one exact step on a single sample") {
  const QuadraticLoss loss(1, 0.0);
  SampleBatch batch(1);
  VecD x{1.0};
  batch.push_back(x, 1.0);
  SgdConfig cfg;
  cfg.c = 1.0;
  cfg.k0 = 0.0; // eta_1 = 1
  VecD w0{0.0};
  const VecD w = sgd_pass(w0, batch, loss, cfg, 10.0);
  CHECK(w[0] == doctest::Approx(1.0));
}

TEST_CASE("iterates never leave the ball") {
  const QuadraticLoss loss(3, 0.0);
  RegressionScenarioConfig sc;
  sc.d = 3;
  sc.rho = 0.0;
  sc.r_norm = 5.0;
  const RegressionScenario scenario(sc);
  SampleBatch batch(3);
  scenario.fill_train(99, 1, 0, 500, batch);
  SgdConfig cfg;
  cfg.c = 1.0;
  cfg.k0 = 1.0;
  const double radius = 0.5; // tight ball forces repeated projections
  VecD w0{0.5, 0.0, 0.0};
  const VecD w = sgd_pass(w0, batch, loss, cfg, radius);
  CHECK(norm(w) <= radius + 1e-12);
}

TEST_CASE("a long pass improves a distant start") {
  // 20 seeds, majority criterion: excess at the output below excess at the
  // start in at least 19.
  RegressionScenarioConfig sc;
  sc.d = 3;
  sc.rho = 0.0;
  sc.r_norm = 5.0;
  sc.psd_margin = 1.0;
  const RegressionScenario scenario(sc);
  const QuadraticLoss loss(3, 0.0);
  SgdConfig cfg;
  cfg.c = 1.0; // 1/m with m = sigma_x2 = 1
  cfg.k0 = 1.0;
  VecD w0{-8.0, 3.0, 2.0}; // far from w* = r_1 = [5,0,0]
  const double excess0 = *scenario.exact_excess(1, w0);

  int improved = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    SampleBatch batch(3);
    scenario.fill_train(seed, 1, 0, 5000, batch);
    const VecD w = sgd_pass(w0, batch, loss, cfg, 10.0);
    if (*scenario.exact_excess(1, w) < excess0) ++improved;
  }
  CHECK(improved >= 19);
}

TEST_CASE("config validation") {
  SgdConfig bad;
  bad.c = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad.c = 1.0;
  bad.k0 = -1.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}
