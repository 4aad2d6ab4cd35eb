#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "driftk/runner.hpp"

namespace driftk {

// Thrown for malformed or inconsistent experiment files; the CLI maps it to
// a dedicated exit code, separate from runtime failures.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Mirror of the INI-style experiment file, one struct per section. Negative
// sentinel values mean "derive from the scenario" and are resolved by
// resolve(); the resolved values are what the summary reports.
struct ScenarioSection {
  std::string kind = "synth-regression"; // synth-classification | csv-stream
  int d = 3;
  double radius = 10.0;
  double rho = 1.0;
  double sigma_x2 = 1.0;
  double lambda = 0.0;
  double r_norm = 1.0;
  double psd_margin = 1.0;
  std::string drift_law = "constant"; // constant | uniform
  double theta = 0.35;
  double noise_var = 0.5;
  double prior_pos = 0.5;
  std::string csv_path;
  long t_test = 500;
  double sgd_c = -1.0;  // < 0: 1/m
  double sgd_k0 = -1.0; // < 0: max(1, ceil(c*M)), so eta_1 <= 1/M
};

struct BoundSection {
  double m = -1.0; // < 0: derived from the scenario
  double big_m = -1.0;
  double g = -1.0;
  double a = -1.0;
  double b = -1.0;
  double sigma = -1.0;
  double m_noise = -1.0;
  double c_alpha = -1.0; // < 0: G^2/m
  double c_beta = -1.0;  // < 0: A/(2m)
  long k_cap = 1000000;
};

struct PolicySection {
  std::string kind = "no-update"; // known-rho | update-past | up-front | periodic | cost-plan
  double eps = 0.1;
  double rho_known = -1.0; // < 0: the scenario's true rho where it exists
  long delta_t = 5;
  long total_samples = 0;
};

struct DriftSection {
  std::string mode = "average"; // windowed
  int window = 5;
  double c_t = 1.0;
  double c_c = 0.0;
  bool use_dn = false;
};

struct CostSection {
  double p0 = 0.0;
  double p1 = 1.0;
  double k0 = 0.5;
  double budget = 0.0;
  std::string phi = "max-increasing-run"; // mean | max
  int solver_iters = 2000;
  double tau = 0.01;
  double rho_plan_init = 0.0;
};

struct CvSection {
  std::vector<double> lambdas; // empty: cross-validation disabled
  int folds = 5;
};

struct RunSection {
  long horizon = 25;
  int runs = 20;
  std::uint64_t seed = 12345;
  std::string compare = "none"; // up-front | cost
};

struct Config {
  std::string name = "custom";
  ScenarioSection scenario;
  BoundSection bound;
  PolicySection policy;
  DriftSection drift;
  CostSection cost;
  CvSection cv;
  RunSection run;
};

// Parses and validates; errors carry the [section] key path.
Config parse_config_text(const std::string& text, const std::string& origin);
Config parse_config_file(const std::string& path);

// Everything needed to execute a config: the built scenario and loss plus a
// ready RunSetup whose derived fields (constants, coefficients, SGD step
// sizes) have been resolved. The summary echoes `resolved`.
struct ResolvedConfig {
  Config resolved;
  std::unique_ptr<Scenario> scenario;
  std::unique_ptr<Loss> loss;
  CvConfig cv;      // referenced by setup.cv when enabled
  RunSetup setup;   // scenario/loss/cv pointers point into this struct
};

// Validates cross-field constraints and builds the runtime objects.
// The returned struct owns everything; keep it alive while running.
std::unique_ptr<ResolvedConfig> resolve(const Config& cfg);

// Serialized resolved config for the summary (section -> key -> value).
std::string config_to_json(const Config& cfg);

} // namespace driftk
