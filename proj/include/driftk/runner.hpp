#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "driftk/bound.hpp"
#include "driftk/cv.hpp"
#include "driftk/drift.hpp"
#include "driftk/kernels.hpp"
#include "driftk/loss.hpp"
#include "driftk/planner.hpp"
#include "driftk/policy.hpp"
#include "driftk/scenario.hpp"
#include "driftk/sgd.hpp"

namespace driftk {

struct RunRecord {
  long n = 0;
  long k_n = 0;
  double rho_hat = 0.0; // combined estimate after step n (0 until one exists)
  double t_n = 0.0;     // slack at n (0 at n=1)
  double eps_hat = 0.0; // the policy's certified bound at step n
  double xi = 0.0;      // (eps_hat - eps)_+
  std::optional<double> excess_exact;
  std::optional<double> test_loss;
  std::optional<double> auc;
  double cum_cost = 0.0;
  VecD w;
  bool saturated = false; // K hit the cap at this step
};

struct RunSetup {
  const Scenario* scenario = nullptr;
  const Loss* loss = nullptr;
  BoundModel bm;
  PolicyConfig policy;
  DriftConfig drift;
  SgdConfig sgd;
  CostModel cost;      // prices cum_cost; drives the planner when active
  double budget = 0.0; // cost_plan only
  PhiKind phi = PhiKind::max_increasing_run;
  SolverConfig solver;
  double rho_plan_init = 0.0; // planner's drift prior before estimates exist
  double radius = 10.0;       // domain ball radius; diam(X) = 2*radius
  long horizon = 25;
  long t_test = 500; // held-out draws per step; 0 disables test metrics
  std::vector<long> forced_schedule; // overrides the policy when nonempty
  const CvConfig* cv = nullptr;      // nonnull enables cross-validated steps
  Exec exec = Exec::parallel;

  void validate() const;
};

struct RunResult {
  std::vector<RunRecord> records;
  std::vector<double> selected_lambda; // per step, cv runs only
  std::vector<std::string> warnings;
};

// Simulates one seeded run of the full pipeline: per-step sample-count
// decision (F_{n-1}-measurable), sampling, one SGD pass, drift estimator
// update and metrics. Baseline kinds are expanded to forced schedules.
RunResult run_sequence(const RunSetup& setup, std::uint64_t seed);

} // namespace driftk
