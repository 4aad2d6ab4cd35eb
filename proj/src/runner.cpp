#include "driftk/runner.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "driftk/metrics.hpp"

namespace driftk {

namespace {

bool is_adaptive(PolicyKind k) {
  return k == PolicyKind::known_rho || k == PolicyKind::no_update ||
         k == PolicyKind::update_past;
}

// Drift bound available entering step n for planning and reporting:
// combined estimate plus slack once estimates exist, the configured prior
// before that.
double working_rho(const DriftEstimator& est, const DriftConfig& drift, long n,
                   double prior) {
  if (!est.has_estimate() || n < 3) return prior;
  double r = est.rho_hat() + slack(n - 1, drift.c_t);
  if (drift.use_dn) r += est.correction(n - 1);
  return r;
}

} // namespace

void RunSetup::validate() const {
  if (scenario == nullptr || loss == nullptr)
    throw std::invalid_argument("run: scenario and loss are required");
  if (horizon < 3) throw std::invalid_argument("run: horizon must be >= 3");
  if (!(radius > 0.0)) throw std::invalid_argument("run: radius must be positive");
  if (t_test < 0) throw std::invalid_argument("run: t_test must be nonnegative");
  bm.validate();
  policy.validate();
  drift.validate();
  sgd.validate();
  cost.validate();
  solver.validate();
  if (policy.kind == PolicyKind::cost_plan && !(budget > 0.0))
    throw std::invalid_argument("run: cost_plan requires a positive budget");
  if (!forced_schedule.empty() &&
      static_cast<long>(forced_schedule.size()) != horizon)
    throw std::invalid_argument("run: forced schedule length must equal the horizon");
  if (scenario->dim() != loss->dim())
    throw std::invalid_argument("run: scenario and loss dimensions differ");
  if (cv != nullptr) cv->validate();
}

namespace {

// Cross-validated variant: C parallel ridge-weight tracks share each step's
// samples; the held-out winner provides the published iterate while every
// track keeps its own state. Test metrics use the lambda=0 loss, the
// quantity the selection targets.
RunResult run_sequence_cv(const RunSetup& setup, std::uint64_t seed) {
  const Scenario& scenario = *setup.scenario;
  const CvConfig& cv = *setup.cv;
  if (!is_adaptive(setup.policy.kind))
    throw std::invalid_argument("run: cv requires an adaptive policy kind");

  const double diam = 2.0 * setup.radius;
  const double eps = setup.policy.eps;
  const double base_lambda = setup.loss->lambda();

  std::vector<CvTrack> tracks;
  tracks.reserve(cv.lambdas.size());
  for (double lam : cv.lambdas) {
    BoundModel bm = track_bound_model(setup.bm, base_lambda, lam);
    tracks.emplace_back(lam, setup.loss->with_lambda(lam), bm, scenario.dim(), setup.drift,
                        diam);
    tracks.back().k_init = invert_bound(bm, diam, eps).k;
  }
  const auto scorer = setup.loss->with_lambda(0.0);

  RunResult result;
  double spent = 0.0;
  bool warned_loo = false;
  SampleBatch test_batch(scenario.dim());

  for (long n = 1; n <= setup.horizon; ++n) {
    const CvStepResult step = cv_step(tracks, scenario, setup.policy.kind, eps, setup.drift,
                                      setup.sgd, cv, setup.radius, n, seed);
    if (step.loo_fallback && !warned_loo) {
      result.warnings.push_back("step " + std::to_string(n) +
                                ": K below fold count, using leave-one-out");
      warned_loo = true;
    }
    const CvTrack& chosen = tracks[static_cast<std::size_t>(step.selected)];
    spent += setup.cost.p(step.k_n);

    RunRecord rec;
    rec.n = n;
    rec.k_n = step.k_n;
    rec.rho_hat = chosen.estimator.has_estimate() ? chosen.estimator.rho_hat() : 0.0;
    rec.t_n = n >= 2 ? slack(n, setup.drift.c_t) : 0.0;
    rec.eps_hat = chosen.eps_hat;
    rec.xi = std::max(0.0, chosen.eps_hat - eps);
    rec.excess_exact = scenario.exact_excess(n, chosen.w);
    if (setup.t_test > 0) {
      test_batch.clear();
      scenario.fill_test(seed, n, setup.t_test, test_batch);
      rec.test_loss = mean_loss(*scorer, chosen.w, test_batch, setup.exec);
    }
    rec.cum_cost = spent;
    rec.w = chosen.w;
    rec.saturated = chosen.saturated;
    result.records.push_back(std::move(rec));
    result.selected_lambda.push_back(chosen.lambda);
  }
  return result;
}

} // namespace

RunResult run_sequence(const RunSetup& setup, std::uint64_t seed) {
  setup.validate();
  if (setup.cv != nullptr && !setup.cv->lambdas.empty()) return run_sequence_cv(setup, seed);

  const Scenario& scenario = *setup.scenario;
  const Loss& loss = *setup.loss;
  const double diam = 2.0 * setup.radius;
  const double eps = setup.policy.eps;
  const long t_end = setup.horizon;

  std::vector<long> schedule = setup.forced_schedule;
  if (schedule.empty() &&
      (setup.policy.kind == PolicyKind::up_front || setup.policy.kind == PolicyKind::periodic))
    schedule = baseline_schedule(setup.policy.kind, setup.policy.total_samples, t_end,
                                 setup.policy.delta_t);
  const bool forced = !schedule.empty();

  long k_init = 0;
  if (!forced && is_adaptive(setup.policy.kind))
    k_init = invert_bound(setup.bm, diam, eps).k;

  DriftEstimator estimator(setup.drift, setup.bm.constants, diam);
  RiskTracker tracker(diam); // reporting tracker for forced and planned runs
  std::vector<long> k_history;
  VecD xi_realized; // committed exceedances, the planner's phi prefix
  VecD plan_tail;   // incumbent plan for the remaining window
  double spent = 0.0;

  RunResult result;
  result.records.reserve(static_cast<std::size_t>(t_end));

  VecD w(static_cast<std::size_t>(scenario.dim()), 0.0);
  SampleBatch batch(scenario.dim());
  SampleBatch test_batch(scenario.dim());
  VecD gbar;

  for (long n = 1; n <= t_end; ++n) {
    // Decision uses only what is known before step n's samples are drawn.
    const double rho_plan = working_rho(estimator, setup.drift, n, setup.rho_plan_init);
    long k_n = 0;
    double eps_hat = 0.0;
    bool saturated = false;

    if (forced) {
      k_n = schedule[static_cast<std::size_t>(n - 1)];
      if (k_n < 0) throw std::invalid_argument("run: forced schedule has negative K");
      tracker = tracker_advance(tracker, setup.bm, rho_plan, static_cast<double>(k_n), n);
      eps_hat = tracker.current;
    } else if (setup.policy.kind == PolicyKind::cost_plan) {
      PlanInputs in;
      in.bm = setup.bm;
      in.cm = setup.cost;
      in.eps = eps;
      in.rho = rho_plan;
      in.tracker0 = tracker;
      in.first_step = n;
      in.horizon = t_end;
      in.budget = setup.budget - spent;
      in.phi = setup.phi;
      in.solver = setup.solver;
      in.xi_prefix = xi_realized;
      in.warm_start = plan_tail;
      RecedingResult plan = replan_receding(in);
      k_n = plan.k;
      plan_tail.assign(plan.plan.begin() + 1, plan.plan.end());
      tracker = tracker_advance(tracker, setup.bm, rho_plan, static_cast<double>(k_n), n);
      eps_hat = tracker.current;
    } else {
      const double rho_arg =
          setup.policy.kind == PolicyKind::known_rho ? setup.policy.rho_known : rho_plan;
      const AdaptiveDecision d = decide_adaptive(setup.policy.kind, n, setup.bm, eps,
                                                 k_init, rho_arg, diam, k_history);
      k_n = d.k;
      eps_hat = d.eps_hat;
      saturated = d.saturated;
      if (saturated)
        result.warnings.push_back("step " + std::to_string(n) + ": K saturated at cap " +
                                  std::to_string(setup.bm.k_cap));
    }

    if (k_n < 0 || k_n > setup.bm.k_cap)
      throw std::logic_error("run: policy produced K outside [0, cap] at step " +
                             std::to_string(n));

    batch.clear();
    if (k_n > 0) scenario.fill_train(seed, n, 0, k_n, batch);

    w = sgd_pass(w, batch, loss, setup.sgd, setup.radius);

    double grad_norm = 0.0;
    if (k_n > 0) {
      mean_gradient(loss, w, batch, gbar, setup.exec);
      grad_norm = norm(gbar);
    }
    estimator.observe(n, k_n, w, grad_norm);
    k_history.push_back(k_n);
    spent += setup.cost.p(k_n);

    RunRecord rec;
    rec.n = n;
    rec.k_n = k_n;
    rec.rho_hat = estimator.has_estimate() ? estimator.rho_hat() : 0.0;
    rec.t_n = n >= 2 ? slack(n, setup.drift.c_t) : 0.0;
    rec.eps_hat = eps_hat;
    rec.xi = std::max(0.0, eps_hat - eps);
    xi_realized.push_back(rec.xi);
    rec.excess_exact = scenario.exact_excess(n, w);
    if (setup.t_test > 0) {
      test_batch.clear();
      scenario.fill_test(seed, n, setup.t_test, test_batch);
      rec.test_loss = mean_loss(loss, w, test_batch, setup.exec);
      if (scenario.is_classification()) {
        VecD scores(test_batch.size());
        bool pos = false, neg = false;
        for (std::size_t i = 0; i < test_batch.size(); ++i) {
          scores[i] = dot(test_batch.x(i), w);
          (test_batch.y(i) > 0 ? pos : neg) = true;
        }
        if (pos && neg) rec.auc = roc_auc(scores, test_batch.ys);
      }
    }
    rec.cum_cost = spent;
    rec.w = w;
    rec.saturated = saturated;
    result.records.push_back(std::move(rec));
  }
  return result;
}

} // namespace driftk
