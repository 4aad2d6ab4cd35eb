#pragma once

#include <span>
#include <vector>

#include "driftk/bound.hpp"

namespace driftk {

enum class PolicyKind {
  known_rho,
  no_update,
  update_past,
  up_front,
  periodic,
  cost_plan,
};

struct PolicyConfig {
  PolicyKind kind = PolicyKind::no_update;
  double eps = 0.1;
  double rho_known = 0.0;   // known_rho only
  long delta_t = 5;         // periodic only
  long total_samples = 0;   // up_front / periodic when not cost driven

  void validate() const;
};

// Stationary sample count: smallest K with b(sqrt(2 eps/m) + rho, K) <= eps.
InvertResult k_star(const BoundModel& bm, double rho, double eps);

// Plug-in version with the estimated drift plus slack in place of rho.
InvertResult choose_k_no_update(const BoundModel& bm, double eps, double rho_plus_slack);

struct UpdatePastResult {
  InvertResult k;
  std::vector<double> chain; // refreshed eps_hat_1 .. eps_hat_{n-1}
  double eps_next = 0.0;     // bound value achieved at step n with k
  double d0 = 0.0;           // distance argument the choice inverted
};

// Refreshes the historical eps_hat chain with the current drift estimate and
// chooses K_n from max(eps_hat_{n-1}, eps). The first two chain entries are
// anchored at b(diam, K) from the initialization rule and do not depend on
// the estimate. Requires at least two past steps.
UpdatePastResult choose_k_update_past(const BoundModel& bm, double eps,
                                      double rho_plus_slack, double diam,
                                      std::span<const long> k_history);

// Non-adaptive comparison schedules over samples: everything at n=1, or
// equal batches at steps n with delta_t | (n-1).
std::vector<long> baseline_schedule(PolicyKind kind, long total, long t, long delta_t);

struct AdaptiveDecision {
  long k = 0;
  double eps_hat = 0.0;
  double d0 = 0.0; // distance argument behind eps_hat = b(d0, k)
  bool saturated = false;
};

// One adaptive sample-count decision, stateless: the per-step chain values
// are recomputed from k_history. Steps 1 and 2 use the initialization count
// k_init = invert_bound(bm, diam, eps). rho_plus_slack is the working drift
// bound available entering step n (ignored for known_rho, which uses the
// true rho passed in its place).
AdaptiveDecision decide_adaptive(PolicyKind kind, long n, const BoundModel& bm, double eps,
                                 long k_init, double rho_plus_slack, double diam,
                                 std::span<const long> k_history);

} // namespace driftk
