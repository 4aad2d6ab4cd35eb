#pragma once

#include <optional>
#include <span>
#include <vector>

#include "driftk/constants.hpp"
#include "driftk/kernels.hpp"
#include "driftk/loss.hpp"
#include "driftk/vec.hpp"

namespace driftk {

// How one-step estimates are combined into the working drift bound.
// `average` targets constant-magnitude drift; `windowed` targets drift that
// is only bounded above, via inflated window maxima.
enum class DriftMode { average, windowed };

struct DriftConfig {
  DriftMode mode = DriftMode::average;
  int window = 5;     // W, windowed mode only
  double c_t = 1.0;   // slack scale, t_n = c_t / sqrt(n-1)
  double c_c = 0.0;   // optimizer dispersion model C(K)^2 = c_c / K
  bool use_dn = false; // add the finite-sample correction to the working bound

  void validate() const;
};

struct OneStepEstimate {
  long i = 0;          // estimate index (pair of steps i-1, i)
  double value = 0.0;  // rho_tilde_i, clipped to diam(X)
};

// rho_tilde_i = ||w_i - w_{i-1}|| + ||gbar_i||/m + ||gbar_{i-1}||/m from
// precomputed mean-gradient norms, clipped to diam.
double rho_tilde_from_norms(double iterate_gap, double grad_norm_i, double grad_norm_prev,
                            double m, double diam);

// Same estimate from raw inputs; both batches must be nonempty.
OneStepEstimate one_step_estimate(long i, std::span<const double> w_i,
                                  std::span<const double> w_prev, const SampleBatch& batch_i,
                                  const SampleBatch& batch_prev, const Loss& loss, double m,
                                  double diam, Exec exec = Exec::serial);

// Mean of the produced estimates. Throws on an empty history.
double combine_average(std::span<const OneStepEstimate> estimates);

// Inflated window maximum ((W+1)/W) * max over the window, the
// uniform-on-[0,rho] unbiased correction. W is the window length actually
// covered (truncated windows at the start pass their own length).
double window_estimator_uniform(std::span<const double> window);

// Windowed combiner: average of the inflated maxima over trailing windows
// of length min(W, position). Never a plain running max.
double combine_windowed(std::span<const OneStepEstimate> estimates, int w);

// Admissibility slack t_n = c_t / sqrt(n-1); requires n >= 2.
double slack(long n, double c_t);

// Finite-sample correction assembled from the optimizer dispersion values
// C_i and sample counts K_i of the sampled steps (trapezoid-weighted, ends
// once and middles twice, divided by L-1 for L entries).
double correction_dn(std::span<const double> c_values, std::span<const long> k_values,
                     const ConvexityConstants& constants);

// Worst-case overshoot of the drift estimate above the true rho:
// (2 sqrt(2) M / m^{3/2}) eps + (2M/m) C(K) + (1/m) sqrt(sigma/K).
double overshoot_margin(double eps, const ConvexityConstants& constants, double c_c,
                        long k_tilde);

// Streaming estimator state for one run. Feed it every step; it produces an
// estimate only when the current and previous steps were both sampled.
class DriftEstimator {
public:
  DriftEstimator(DriftConfig cfg, const ConvexityConstants& constants, double diam);

  // Call once per step after optimizing, with the post-step iterate and the
  // norm of the mean gradient over the step's batch (ignored when k == 0).
  void observe(long n, long k, const VecD& w, double grad_norm);

  bool has_estimate() const { return !estimates_.empty(); }
  std::size_t count() const { return estimates_.size(); }
  const std::vector<OneStepEstimate>& estimates() const { return estimates_; }

  // Combined estimate per the configured mode. Throws when empty.
  double rho_hat() const;

  // Correction term for calendar step n, including the windowed-mode
  // rescaling ((n-1)/(n-W))*((W+1)/W) when applicable. Zero until two
  // sampled steps exist.
  double correction(long n) const;

  const DriftConfig& config() const { return cfg_; }

private:
  double windowed_scale(long n) const;

  DriftConfig cfg_;
  ConvexityConstants constants_;
  double diam_;
  std::vector<OneStepEstimate> estimates_;
  std::vector<double> c_history_; // C_i over sampled steps
  std::vector<long> k_history_;   // K_i over sampled steps
  struct Prev {
    long n;
    VecD w;
    double grad_norm;
  };
  std::optional<Prev> prev_;
};

} // namespace driftk
