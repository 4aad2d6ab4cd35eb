#pragma once

#include <optional>

#include "driftk/constants.hpp"

namespace driftk {

// Excess risk bound after one SGD pass of K samples started at distance d0
// from the current minimizer:
//   b(d0, K) = c_alpha * d0^2 / K^2 + c_beta / K.
struct BoundModel {
  double c_alpha = 1.0;
  double c_beta = 1.0;
  ConvexityConstants constants;
  long k_cap = 1000000;

  void validate() const;
};

// Default coefficients derived from the curvature constants.
double default_c_alpha(const ConvexityConstants& c);
double default_c_beta(const ConvexityConstants& c);

// b(d0, K) for K >= 1 samples (real-valued K accepted by the planner's
// relaxation). K <= 0 is a contract violation.
double bound_eval(const BoundModel& bm, double d0, double k);

// One-step descent bound without sampling: e(dist^2) = (M/2) * dist^2.
double descent_bound_e(const ConvexityConstants& c, double dist2);

struct InvertResult {
  long k = 1;
  bool saturated = false; // bound still above eps at k_cap
};

// Smallest integer K >= 1 with b(d0, K) <= eps, capped at k_cap.
InvertResult invert_bound(const BoundModel& bm, double d0, double eps);

// eps_n = b(sqrt(2 eps_prev / m) + rho, K).
double epsilon_recursion(const BoundModel& bm, double eps_prev, double rho, long k);

// Worst-case excess risk tracker for arbitrary K schedules, including zero
// steps. Distinguishes whether any samples were ever taken and propagates
// drift through the idle stretches since the last sampled step.
struct RiskTracker {
  double diameter = 0.0;            // diam(X), fixes the never-sampled cases
  std::optional<long> last_sampled; // t_s, most recent step with K > 0
  double eps_at_last_sample = 0.0;  // tracker value at t_s
  double current = 0.0;             // tracker value at the last advanced step
  long step = 0;                    // last advanced step index

  explicit RiskTracker(double diam) : diameter(diam), current(0.0) {}
};

// Advances the tracker to step n (must be step + 1) with K_n samples and
// per-step drift bound rho (drift estimate plus slack at use sites).
RiskTracker tracker_advance(const RiskTracker& rt, const BoundModel& bm, double rho,
                            double k_n, long n);

} // namespace driftk
