#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "driftk/bound.hpp"
#include "driftk/drift.hpp"
#include "driftk/loss.hpp"
#include "driftk/policy.hpp"
#include "driftk/scenario.hpp"
#include "driftk/sgd.hpp"

namespace driftk {

struct CvConfig {
  std::vector<double> lambdas;
  int folds = 5;

  void validate() const;
};

// One ridge-weight candidate running the full pipeline in parallel with the
// others: its own iterate, drift estimator, bound model and history.
struct CvTrack {
  double lambda = 0.0;
  std::unique_ptr<Loss> loss;
  BoundModel bm;
  VecD w;
  DriftEstimator estimator;
  std::vector<long> k_history;
  long k_init = 1;
  double eps_hat = 0.0;
  bool saturated = false;

  CvTrack(double lam, std::unique_ptr<Loss> l, const BoundModel& b, int dim,
          const DriftConfig& dc, double diam)
      : lambda(lam), loss(std::move(l)), bm(b),
        w(static_cast<std::size_t>(dim), 0.0), estimator(dc, b.constants, diam) {}
};

struct CvStepResult {
  long k_n = 0;
  int selected = 0; // index of the winning track
  std::vector<double> scores;
  bool loo_fallback = false; // K_n < folds forced leave-one-out
};

// Advances every track through step n on one shared sample batch: each
// track proposes a count, the maximum is drawn once, candidates are scored
// by held-out lambda=0 loss across folds, and every track retrains on the
// full batch so it stays live for later steps.
CvStepResult cv_step(std::vector<CvTrack>& tracks, const Scenario& scenario,
                     PolicyKind kind, double eps, const DriftConfig& drift,
                     const SgdConfig& sgd, const CvConfig& cv, double radius, long n,
                     std::uint64_t seed);

// Track constants for ridge weight lambda, shifted from the base model's
// (which corresponds to base_lambda). The bound coefficients keep their
// calibrated shape by scaling with m.
BoundModel track_bound_model(const BoundModel& base, double base_lambda, double lambda);

} // namespace driftk
