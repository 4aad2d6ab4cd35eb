#include "driftk/presets.hpp"

namespace driftk {

namespace {

// Drifting least-squares stream: identity covariance, target vector of norm 5
// rotating so the minimizer moves by exactly rho per step. The bound
// coefficients are deliberately loose upper bounds (G = 4, A = 6 style), not
// the tightest constants, so the guarantee has realistic slack.
Config regression_base() {
  Config cfg;
  cfg.scenario.kind = "synth-regression";
  cfg.scenario.d = 3;
  cfg.scenario.radius = 10.0;
  cfg.scenario.rho = 1.0;
  cfg.scenario.sigma_x2 = 1.0;
  cfg.scenario.lambda = 0.0;
  cfg.scenario.r_norm = 5.0;
  cfg.scenario.psd_margin = 1.0;
  cfg.scenario.t_test = 400;
  cfg.bound.c_alpha = 16.0;
  cfg.bound.c_beta = 3.0;
  cfg.bound.sigma = 4.0;
  cfg.policy.eps = 0.1;
  cfg.drift.mode = "average";
  cfg.drift.c_t = 1.0;
  cfg.drift.c_c = 6.0;
  cfg.run.horizon = 25;
  cfg.run.runs = 20;
  cfg.run.seed = 101;
  return cfg;
}

Config synth_regression() {
  Config cfg = regression_base();
  cfg.name = "synth-regression";
  cfg.policy.kind = "no-update";
  return cfg;
}

Config synth_regression_cost() {
  Config cfg = regression_base();
  cfg.name = "synth-regression-cost";
  cfg.policy.kind = "cost-plan";
  // A stiff fixed cost per sampling event plus a scarce budget: consolidated
  // refreshes with skipped steps beat trimming every batch.
  cfg.cost.p0 = 10.0;
  cfg.cost.p1 = 1.0;
  cfg.cost.budget = 400.0;
  cfg.cost.phi = "max-increasing-run";
  cfg.cost.rho_plan_init = 1.0;
  cfg.run.seed = 202;
  cfg.run.compare = "cost";
  return cfg;
}

Config synth_classification() {
  Config cfg;
  cfg.name = "synth-classification";
  cfg.scenario.kind = "synth-classification";
  cfg.scenario.d = 2;
  cfg.scenario.radius = 10.0;
  cfg.scenario.theta = 0.35;
  cfg.scenario.noise_var = 0.5;
  cfg.scenario.prior_pos = 0.5;
  cfg.scenario.lambda = 0.1;
  cfg.scenario.t_test = 500;
  // m = lambda and M = 1 + d*noise_var + lambda come from the scenario;
  // G = 3 and A = 8 give c_alpha = 90, c_beta = 40.
  cfg.bound.c_alpha = 90.0;
  cfg.bound.c_beta = 40.0;
  cfg.policy.kind = "no-update";
  cfg.policy.eps = 0.5;
  cfg.drift.mode = "average";
  cfg.drift.c_t = 1.0;
  cfg.run.horizon = 25;
  cfg.run.runs = 20;
  cfg.run.seed = 303;
  cfg.run.compare = "up-front";
  return cfg;
}

Config csv_stream() {
  Config cfg;
  cfg.name = "csv-stream";
  cfg.scenario.kind = "csv-stream";
  cfg.scenario.csv_path = "data/example_stream.csv";
  cfg.scenario.d = 3;
  cfg.scenario.radius = 10.0;
  cfg.scenario.lambda = 0.0;
  cfg.scenario.t_test = 200;
  // The bundled stream was generated from the same least-squares family as
  // synth-regression (rho = 0.5), so the identical coefficients apply.
  cfg.bound.m = 1.0;
  cfg.bound.big_m = 1.0;
  cfg.bound.c_alpha = 16.0;
  cfg.bound.c_beta = 3.0;
  cfg.bound.sigma = 4.0;
  cfg.policy.kind = "no-update";
  cfg.policy.eps = 0.2;
  cfg.drift.mode = "average";
  cfg.drift.c_t = 1.0;
  cfg.drift.c_c = 6.0;
  cfg.run.horizon = 8;
  cfg.run.runs = 3;
  cfg.run.seed = 404;
  return cfg;
}

} // namespace

std::vector<std::string> preset_names() {
  return {"synth-regression", "synth-regression-cost", "synth-classification",
          "csv-stream"};
}

Config preset_config(const std::string& name) {
  if (name == "synth-regression") return synth_regression();
  if (name == "synth-regression-cost") return synth_regression_cost();
  if (name == "synth-classification") return synth_classification();
  if (name == "csv-stream") return csv_stream();
  throw ConfigError("unknown preset \"" + name +
                    "\"; use --preset list to see the built-ins");
}

} // namespace driftk
