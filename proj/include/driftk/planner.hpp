#pragma once

#include <span>
#include <vector>

#include "driftk/bound.hpp"
#include "driftk/vec.hpp"

namespace driftk {

// Per-step sampling cost p(K) = P0*1{K>0} + P1*K, with the concave
// continuous relaxation p_hat that ramps linearly from p_hat(0)=0 to
// p(K0) at the knee 0 < K0 < 1 and follows p above it.
struct CostModel {
  double p0 = 0.0;
  double p1 = 1.0;
  double k0 = 0.5;

  void validate() const;
  double p(long k) const;
  double p_hat(double k) const;
};

enum class PhiKind { mean, max, max_increasing_run };

// Scalarizes the per-step exceedances xi_n = (bound - eps)_+. The
// increasing-run variant sums xi over maximal contiguous non-decreasing
// runs of length >= 2 and takes the largest such sum (0 if none exist).
double phi_loss(PhiKind kind, std::span<const double> xi);

struct SolverConfig {
  int iterations = 2000;
  double tau = 0.01;     // softplus temperature for (x)_+ inside the objective

  void validate() const;
};

struct PlanInputs {
  BoundModel bm;
  CostModel cm;
  double eps = 0.1;
  double rho = 0.0;           // drift estimate plus slack for the window
  RiskTracker tracker0{0.0};  // state entering the first window step
  long first_step = 1;        // calendar index of the window's first step
  long horizon = 1;           // calendar index T of the last step
  double budget = 0.0;        // cost budget remaining for the window
  PhiKind phi = PhiKind::max_increasing_run;
  SolverConfig solver;
  // Realized exceedances of steps 1..first_step-1. phi is scored on the
  // whole trajectory (prefix followed by the window), so a receding re-solve
  // cannot discount increasing runs that straddle the commit boundary.
  VecD xi_prefix;
  // Tail of the previous window's plan, aligned to this window (may be
  // empty). Scored as a candidate, which keeps consecutive re-solves from
  // abandoning a good incumbent when the drift estimate wobbles.
  VecD warm_start;
};

struct PlanResult {
  VecD k;                 // relaxed per-step counts over the window
  bool feasible = true;   // false: budget below one sample, plan all zero
  double objective = 0.0; // phi of the hard exceedances at k
};

// Projects a real-valued schedule onto the plan constraints: nonnegativity
// and the relaxed ordering inequalities by alternating projection, then one
// downward budget rescale. Identity on feasible schedules; also how external
// schedules (baselines, warm starts) enter the planner's comparison set.
void project_feasible(const PlanInputs& inputs, VecD& k);

// Projected gradient descent on the relaxed program: minimize phi of the
// soft exceedances subject to the budget, ordering constraints
// (K_first <= K_second, interior K_j <= K_{j-1} + K_{j+1}, last pair
// non-decreasing) and K >= 0, restarted from uniform, front-loaded and
// periodic initial points, keeping the best iterate seen. phi plateaus at
// zero over large sets of schedules, so iterates are ranked by
// (phi, mean window exceedance) lexicographically; the up-front and
// periodic comparison schedules, projected into the feasible set, and a
// budget-greedy policy-shaped schedule are scored as candidates too, which
// makes the result never worse than either baseline by construction.
PlanResult plan_relaxed(const PlanInputs& inputs);

struct RecedingResult {
  long k = 0;  // committed count for the window's first step
  VecD plan;   // the full relaxed plan; pass plan[1:] as the next warm start
};

// Solves the window and commits its first coordinate: round half up, then
// clamp down until the true cost p fits the remaining budget.
RecedingResult replan_receding(const PlanInputs& inputs);

// Exceedances xi of an integer schedule under drift rho, via the tracker.
VecD evaluate_schedule_xi(const BoundModel& bm, double diam, double rho, double eps,
                          std::span<const long> schedule);

// Cost-budgeted comparison schedules: the largest single batch affordable at
// n=1, or equal-cost batches every delta_t steps.
std::vector<long> upfront_schedule_cost(const CostModel& cm, double budget, long t);
std::vector<long> periodic_schedule_cost(const CostModel& cm, double budget, long t,
                                         long delta_t);

} // namespace driftk
