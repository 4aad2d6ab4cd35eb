#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>

#include "driftk/rng.hpp"
#include "driftk/samples.hpp"
#include "driftk/vec.hpp"

namespace driftk {

// A drifting supervised problem: per-step sample laws plus, where available,
// exact population quantities. Implementations are immutable after
// construction so runs can share one instance across threads.
class Scenario {
public:
  virtual ~Scenario() = default;

  virtual int dim() const = 0;
  virtual std::string name() const = 0;

  // Appends `count` training samples for step n, indices k0..k0+count-1.
  // Training draws come from the train stream; CSV pools draw without
  // replacement and throw when the step's pool is exhausted.
  virtual void fill_train(std::uint64_t seed, long n, long k0, long count,
                          SampleBatch& out) const = 0;

  // Appends `count` evaluation samples for step n from the test stream
  // (always with replacement, never overlapping training draws).
  virtual void fill_test(std::uint64_t seed, long n, long count, SampleBatch& out) const = 0;

  // Exact minimizer / excess risk at step n when the model admits them.
  virtual std::optional<VecD> exact_minimizer(long /*n*/) const { return std::nullopt; }
  virtual std::optional<double> exact_excess(long /*n*/, const VecD& /*w*/) const {
    return std::nullopt;
  }

  virtual bool is_classification() const { return false; }
};

// Gaussian linear regression with the target direction r_n rotating in a
// fixed coordinate 2-plane so that the minimizer moves exactly rho per step:
// x ~ N(0, sigma_x2 I), y | x = r_n . x / sigma_x2 + s * g.
struct RegressionScenarioConfig {
  int d = 3;
  double sigma_x2 = 1.0;
  double lambda = 0.0;
  double rho = 1.0;
  double r_norm = 1.0;
  double psd_margin = 1.0;     // sigma_y2 = ||r||^2 / sigma_x2 + psd_margin
  bool uniform_drift = false;  // per-step magnitude Unif[0, rho] instead of rho

  void validate() const;
};

class RegressionScenario final : public Scenario {
public:
  explicit RegressionScenario(const RegressionScenarioConfig& cfg);

  int dim() const override { return cfg_.d; }
  std::string name() const override { return "synth-regression"; }
  void fill_train(std::uint64_t seed, long n, long k0, long count,
                  SampleBatch& out) const override;
  void fill_test(std::uint64_t seed, long n, long count, SampleBatch& out) const override;
  std::optional<VecD> exact_minimizer(long n) const override;
  std::optional<double> exact_excess(long n, const VecD& w) const override;

  VecD r_of_step(long n) const;
  double sigma_y2() const { return sigma_y2_; }
  const RegressionScenarioConfig& config() const { return cfg_; }

private:
  double angle_of_step(long n) const;
  void draw_one(std::uint64_t seed, Stream stream, long n, long k,
                SampleBatch& out) const;

  RegressionScenarioConfig cfg_;
  double sigma_y2_ = 0.0;
  double noise_sd_ = 0.0;  // s, with s^2 = sigma_y2 - ||r||^2 / sigma_x2
  double step_angle_ = 0.0;
};

// Binary classification with antipodal Gaussian class centers on the unit
// sphere, advancing by a constant angle per step:
// y = +-1 with equal priors, x | y ~ N(y * mu_n, noise_var I).
struct ClassificationScenarioConfig {
  int d = 2;
  double theta = 0.35;     // angular step per n, radians
  double noise_var = 0.5;
  double prior_pos = 0.5;

  void validate() const;
};

class ClassificationScenario final : public Scenario {
public:
  explicit ClassificationScenario(const ClassificationScenarioConfig& cfg);

  int dim() const override { return cfg_.d; }
  std::string name() const override { return "synth-classification"; }
  void fill_train(std::uint64_t seed, long n, long k0, long count,
                  SampleBatch& out) const override;
  void fill_test(std::uint64_t seed, long n, long count, SampleBatch& out) const override;
  bool is_classification() const override { return true; }

  VecD mu_of_step(long n) const;
  const ClassificationScenarioConfig& config() const { return cfg_; }

private:
  void draw_one(std::uint64_t seed, Stream stream, long n, long k, SampleBatch& out) const;

  ClassificationScenarioConfig cfg_;
};

// Replays a CSV file with columns step,y,x1..xd. Each step's rows form a
// pool; training draws a fresh without-replacement permutation per seed,
// evaluation draws with replacement from the same pool.
class CsvScenario final : public Scenario {
public:
  explicit CsvScenario(const std::string& path);

  int dim() const override { return d_; }
  std::string name() const override { return "csv-stream"; }
  void fill_train(std::uint64_t seed, long n, long k0, long count,
                  SampleBatch& out) const override;
  void fill_test(std::uint64_t seed, long n, long count, SampleBatch& out) const override;
  bool is_classification() const override { return classification_; }

  long steps() const { return static_cast<long>(pools_.size()); }
  long pool_size(long n) const;

private:
  int d_ = 0;
  bool classification_ = false;
  std::vector<SampleBatch> pools_; // index n-1
};

} // namespace driftk
