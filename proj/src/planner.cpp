#include "driftk/planner.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace driftk {

namespace {

// Counts below the commit-rounding threshold behave as zero inside the
// relaxed objective, so the solver sees the same case split the committed
// schedule will produce.
constexpr double kZeroThreshold = 0.5;

double softplus(double x, double tau) {
  const double z = x / tau;
  if (z > 30.0) return x;
  if (z < -30.0) return 0.0;
  return tau * std::log1p(std::exp(z));
}

// Tracker recursion over the window with real-valued counts; soft=true maps
// exceedances through the softplus, soft=false through the exact (x)_+. The
// exceedance vector is the realized prefix followed by the window, so phi
// sees runs that cross the commit boundary.
void window_xi(const PlanInputs& in, std::span<const double> ks, bool soft, VecD& xi) {
  xi.assign(in.xi_prefix.begin(), in.xi_prefix.end());
  xi.resize(in.xi_prefix.size() + ks.size());
  RiskTracker rt = in.tracker0;
  for (std::size_t j = 0; j < ks.size(); ++j) {
    const double kj = ks[j] < kZeroThreshold ? 0.0 : ks[j];
    rt = tracker_advance(rt, in.bm, in.rho, kj, in.first_step + static_cast<long>(j));
    const double gap = rt.current - in.eps;
    xi[in.xi_prefix.size() + j] = soft ? softplus(gap, in.solver.tau) : std::max(0.0, gap);
  }
}

// phi plateaus at zero over whole regions of schedules, so ties are broken
// by the mean window exceedance.
struct Score {
  double phi = 0.0;
  double mean = 0.0;

  bool operator<(const Score& o) const {
    if (phi != o.phi) return phi < o.phi;
    return mean < o.mean;
  }
};

Score hard_score(const PlanInputs& in, std::span<const double> ks, VecD& buf) {
  window_xi(in, ks, false, buf);
  Score s;
  s.phi = phi_loss(in.phi, buf);
  double sum = 0.0;
  for (std::size_t j = in.xi_prefix.size(); j < buf.size(); ++j) sum += buf[j];
  s.mean = ks.empty() ? 0.0 : sum / static_cast<double>(ks.size());
  return s;
}

// Differentiable surrogate for the gradient steps; the small mean term keeps
// a descent direction alive on the phi = 0 plateau.
constexpr double kMeanTieWeight = 1e-3;

double soft_objective(const PlanInputs& in, std::span<const double> ks, VecD& buf) {
  window_xi(in, ks, true, buf);
  double obj = phi_loss(in.phi, buf);
  double sum = 0.0;
  for (std::size_t j = in.xi_prefix.size(); j < buf.size(); ++j) sum += buf[j];
  if (!ks.empty()) obj += kMeanTieWeight * sum / static_cast<double>(ks.size());
  return obj;
}

} // namespace

// Alternating projection onto the ordering constraints and the nonnegative
// orthant, then a single budget rescale (scaling by s in (0,1] preserves
// both nonnegativity and every ordering halfspace).
void project_feasible(const PlanInputs& in, VecD& k) {
  const std::size_t l = k.size();
  for (int pass = 0; pass < 400; ++pass) {
    double worst = 0.0;
    for (auto& v : k)
      if (v < 0.0) {
        worst = std::max(worst, -v);
        v = 0.0;
      }
    if (l >= 2 && k[0] > k[1]) {
      worst = std::max(worst, k[0] - k[1]);
      const double mid = 0.5 * (k[0] + k[1]);
      k[0] = k[1] = mid;
    }
    for (std::size_t j = 1; j + 1 < l; ++j) {
      const double v = k[j] - k[j - 1] - k[j + 1];
      if (v > 0.0) {
        worst = std::max(worst, v);
        k[j - 1] += v / 3.0;
        k[j] -= v / 3.0;
        k[j + 1] += v / 3.0;
      }
    }
    if (l >= 2 && k[l - 2] > k[l - 1]) {
      worst = std::max(worst, k[l - 2] - k[l - 1]);
      const double mid = 0.5 * (k[l - 2] + k[l - 1]);
      k[l - 2] = k[l - 1] = mid;
    }
    if (worst <= 1e-10) break;
  }

  double spend = 0.0;
  for (double v : k) spend += in.cm.p_hat(v);
  if (spend <= in.budget) return;
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 60; ++it) {
    const double s = 0.5 * (lo + hi);
    double c = 0.0;
    for (double v : k) c += in.cm.p_hat(s * v);
    (c > in.budget ? hi : lo) = s;
  }
  for (double& v : k) v *= lo;
}

namespace {

// Equal-budget batches at every window index j with j % period == offset.
VecD periodic_candidate(const PlanInputs& in, std::size_t l, std::size_t period,
                        std::size_t offset) {
  VecD k(l, 0.0);
  std::size_t events = 0;
  for (std::size_t j = offset; j < l; j += period) ++events;
  if (events == 0) return k;
  const double per = in.budget / static_cast<double>(events);
  const double v = std::max(0.0, (per - in.cm.p0) / in.cm.p1);
  for (std::size_t j = offset; j < l; j += period) k[j] = v;
  return k;
}

VecD init_point(const PlanInputs& in, int which, std::size_t l) {
  VecD k(l, 0.0);
  const double per_step = in.budget / static_cast<double>(l);
  switch (which) {
    case 0: { // uniform
      const double v = std::max(0.0, (per_step - in.cm.p0) / in.cm.p1);
      std::fill(k.begin(), k.end(), v);
      break;
    }
    case 1: { // front-loaded
      const std::size_t head = std::max<std::size_t>(1, l / 3);
      const double per = in.budget / static_cast<double>(head);
      const double v = std::max(0.0, (per - in.cm.p0) / in.cm.p1);
      for (std::size_t j = 0; j < head; ++j) k[j] = v;
      break;
    }
    default: // periodic, every 5 steps
      k = periodic_candidate(in, l, 5, 0);
      break;
  }
  return k;
}

// Smallest integer count whose tracker advance lands at or below eps, found
// by doubling then bisecting (the bound is decreasing in K).
double required_count(const PlanInputs& in, const RiskTracker& rt, long step) {
  auto ok = [&](double k) {
    return tracker_advance(rt, in.bm, in.rho, k, step).current <= in.eps;
  };
  const double cap = static_cast<double>(in.bm.k_cap);
  double hi = 1.0;
  while (hi < cap && !ok(hi)) hi *= 2.0;
  if (hi > cap) hi = cap;
  if (!ok(hi)) return cap; // saturated: even the cap cannot reach eps
  long lo = static_cast<long>(hi) / 2;
  long h = static_cast<long>(hi);
  while (lo + 1 < h) {
    const long mid = lo + (h - lo) / 2;
    (ok(static_cast<double>(mid)) ? h : lo) = mid;
  }
  return static_cast<double>(h);
}

// Budget-greedy schedule shaped like the adaptive policy: at each step take
// what the tracker needs to reach eps, while the money lasts.
VecD greedy_candidate(const PlanInputs& in, std::size_t l) {
  VecD k(l, 0.0);
  RiskTracker rt = in.tracker0;
  double remaining = in.budget;
  for (std::size_t j = 0; j < l; ++j) {
    const long step = in.first_step + static_cast<long>(j);
    double kj = required_count(in, rt, step);
    const double afford = std::floor((remaining - in.cm.p0) / in.cm.p1);
    kj = std::min(kj, std::max(0.0, afford));
    if (kj < 1.0) kj = 0.0;
    k[j] = kj;
    if (kj > 0.0) remaining -= in.cm.p(static_cast<long>(kj));
    rt = tracker_advance(rt, in.bm, in.rho, kj, step);
  }
  return k;
}

// Two equal batches up front (share f of the budget), then equal batches
// every g steps with the remainder: the shape the eps recursion's
// initialization suggests, with consolidated refreshes after it.
VecD two_phase_candidate(const PlanInputs& in, std::size_t l, double f,
                         std::size_t g) {
  VecD k(l, 0.0);
  const double head_budget = f * in.budget;
  const double head = std::max(0.0, (head_budget / 2.0 - in.cm.p0) / in.cm.p1);
  k[0] = head;
  k[1] = head;
  std::size_t events = 0;
  for (std::size_t j = 2; j < l; j += g) ++events;
  if (events > 0) {
    const double per = (in.budget - head_budget) / static_cast<double>(events);
    const double v = std::max(0.0, (per - in.cm.p0) / in.cm.p1);
    for (std::size_t j = 2; j < l; j += g) k[j] = v;
  }
  return k;
}

} // namespace

void CostModel::validate() const {
  if (p0 < 0.0) throw std::invalid_argument("cost: P0 must be nonnegative");
  if (!(p1 > 0.0)) throw std::invalid_argument("cost: P1 must be positive");
  if (!(k0 > 0.0 && k0 < 1.0)) throw std::invalid_argument("cost: K0 must lie in (0,1)");
}

double CostModel::p(long k) const {
  if (k < 0) throw std::invalid_argument("cost: K must be nonnegative");
  return (k > 0 ? p0 : 0.0) + p1 * static_cast<double>(k);
}

double CostModel::p_hat(double k) const {
  if (k <= 0.0) return 0.0;
  if (k <= k0) return (p0 + p1 * k0) * k / k0;
  return p0 + p1 * k;
}

double phi_loss(PhiKind kind, std::span<const double> xi) {
  if (xi.empty()) throw std::invalid_argument("phi_loss: empty input");
  switch (kind) {
    case PhiKind::mean: {
      double s = 0.0;
      for (double v : xi) s += v;
      return s / static_cast<double>(xi.size());
    }
    case PhiKind::max:
      return *std::max_element(xi.begin(), xi.end());
    case PhiKind::max_increasing_run: {
      double best = 0.0;
      std::size_t start = 0;
      for (std::size_t i = 1; i <= xi.size(); ++i) {
        const bool breaks = i == xi.size() || xi[i] < xi[i - 1];
        if (!breaks) continue;
        if (i - start >= 2) {
          double s = 0.0;
          for (std::size_t j = start; j < i; ++j) s += xi[j];
          best = std::max(best, s);
        }
        start = i;
      }
      return best;
    }
  }
  throw std::logic_error("phi_loss: unknown kind");
}

void SolverConfig::validate() const {
  if (iterations < 1) throw std::invalid_argument("solver: iterations must be >= 1");
  if (!(tau > 0.0)) throw std::invalid_argument("solver: tau must be positive");
}

PlanResult plan_relaxed(const PlanInputs& in) {
  in.bm.validate();
  in.cm.validate();
  in.solver.validate();
  if (in.horizon < in.first_step)
    throw std::invalid_argument("plan_relaxed: empty window");
  if (in.tracker0.step != in.first_step - 1)
    throw std::invalid_argument("plan_relaxed: tracker not aligned with window start");
  const std::size_t l = static_cast<std::size_t>(in.horizon - in.first_step + 1);

  PlanResult res;
  if (in.budget < in.cm.p_hat(1.0)) {
    // Cannot afford a single sample anywhere in the window.
    res.k.assign(l, 0.0);
    res.feasible = false;
    VecD buf;
    window_xi(in, res.k, false, buf);
    res.objective = phi_loss(in.phi, buf);
    return res;
  }

  VecD buf;
  VecD best;
  Score best_score;
  bool have_best = false;
  auto consider = [&](VecD cand) {
    project_feasible(in, cand);
    const Score s = hard_score(in, cand, buf);
    if (!have_best || s < best_score) {
      best_score = s;
      best = std::move(cand);
      have_best = true;
    }
  };

  // Candidate portfolio scored up front: doing nothing, both comparison
  // baselines (which the result must not lose to), consolidation patterns at
  // every phase, the policy-shaped greedy spend, init-then-consolidate
  // shapes, and the previous window's incumbent plan.
  consider(VecD(l, 0.0));
  VecD upfront(l, 0.0);
  upfront[0] = std::max(0.0, (in.budget - in.cm.p0) / in.cm.p1);
  consider(std::move(upfront));
  for (std::size_t period : {std::size_t{1}, std::size_t{2}, std::size_t{3},
                             std::size_t{5}}) {
    for (std::size_t offset = 0; offset < period && offset < l; ++offset) {
      consider(periodic_candidate(in, l, period, offset));
    }
  }
  consider(greedy_candidate(in, l));
  if (l >= 3) {
    for (double f : {0.3, 0.5, 0.7}) {
      for (std::size_t g : {std::size_t{1}, std::size_t{2}, std::size_t{3},
                            std::size_t{5}}) {
        consider(two_phase_candidate(in, l, f, g));
      }
    }
  }
  if (in.warm_start.size() == l) consider(in.warm_start);

  for (int restart = 0; restart < 3; ++restart) {
    VecD k = init_point(in, restart, l);
    project_feasible(in, k);
    VecD grad(l);
    VecD trial(l);
    for (int it = 0; it <= in.solver.iterations; ++it) {
      consider(k);
      if (it == in.solver.iterations) break;

      double gnorm2 = 0.0;
      for (std::size_t j = 0; j < l; ++j) {
        trial = k;
        const double h = 0.25;
        trial[j] += h;
        const double fp = soft_objective(in, trial, buf);
        trial[j] = std::max(0.0, k[j] - h);
        const double fm = soft_objective(in, trial, buf);
        grad[j] = (fp - fm) / (h + (k[j] - trial[j]));
        gnorm2 += grad[j] * grad[j];
      }
      if (gnorm2 < 1e-24) break;
      const double scale = std::max(1.0, *std::max_element(k.begin(), k.end()));
      const double step =
          0.25 * scale / (1.0 + static_cast<double>(it) / 50.0) / std::sqrt(gnorm2);
      for (std::size_t j = 0; j < l; ++j) k[j] -= step * grad[j];
      project_feasible(in, k);
    }
  }

  res.k = best;
  res.objective = best_score.phi;
  return res;
}

RecedingResult replan_receding(const PlanInputs& in) {
  PlanResult plan = plan_relaxed(in);
  RecedingResult res;
  long k = static_cast<long>(std::floor(plan.k.front() + 0.5));
  if (k < 0) k = 0;
  while (k > 0 && in.cm.p(k) > in.budget) --k;
  res.k = k;
  res.plan = std::move(plan.k);
  return res;
}

VecD evaluate_schedule_xi(const BoundModel& bm, double diam, double rho, double eps,
                          std::span<const long> schedule) {
  VecD xi(schedule.size());
  RiskTracker rt(diam);
  for (std::size_t j = 0; j < schedule.size(); ++j) {
    rt = tracker_advance(rt, bm, rho, static_cast<double>(schedule[j]),
                         static_cast<long>(j + 1));
    xi[j] = std::max(0.0, rt.current - eps);
  }
  return xi;
}

std::vector<long> upfront_schedule_cost(const CostModel& cm, double budget, long t) {
  if (t < 1) throw std::invalid_argument("upfront_schedule_cost: horizon must be >= 1");
  std::vector<long> ks(static_cast<std::size_t>(t), 0);
  if (budget >= cm.p(1))
    ks[0] = static_cast<long>(std::floor((budget - cm.p0) / cm.p1));
  return ks;
}

std::vector<long> periodic_schedule_cost(const CostModel& cm, double budget, long t,
                                         long delta_t) {
  if (t < 1) throw std::invalid_argument("periodic_schedule_cost: horizon must be >= 1");
  if (delta_t < 1) throw std::invalid_argument("periodic_schedule_cost: delta_t must be >= 1");
  std::vector<long> ks(static_cast<std::size_t>(t), 0);
  long events = 0;
  for (long n = 1; n <= t; ++n)
    if ((n - 1) % delta_t == 0) ++events;
  const double per = budget / static_cast<double>(events);
  long batch = 0;
  if (per >= cm.p(1)) batch = static_cast<long>(std::floor((per - cm.p0) / cm.p1));
  for (long n = 1; n <= t; ++n)
    if ((n - 1) % delta_t == 0) ks[static_cast<std::size_t>(n - 1)] = batch;
  return ks;
}

} // namespace driftk
