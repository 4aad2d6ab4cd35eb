#include "driftk/policy.hpp"

#include <cmath>
#include <stdexcept>

namespace driftk {

void PolicyConfig::validate() const {
  if (!(eps > 0.0)) throw std::invalid_argument("policy: eps must be positive");
  if (rho_known < 0.0) throw std::invalid_argument("policy: rho_known must be nonnegative");
  if (kind == PolicyKind::periodic && delta_t < 1)
    throw std::invalid_argument("policy: delta_t must be >= 1");
  if ((kind == PolicyKind::up_front || kind == PolicyKind::periodic) && total_samples < 0)
    throw std::invalid_argument("policy: total_samples must be nonnegative");
}

InvertResult k_star(const BoundModel& bm, double rho, double eps) {
  if (rho < 0.0) throw std::invalid_argument("k_star: rho must be nonnegative");
  const double d0 = std::sqrt(2.0 * eps / bm.constants.m) + rho;
  return invert_bound(bm, d0, eps);
}

InvertResult choose_k_no_update(const BoundModel& bm, double eps, double rho_plus_slack) {
  if (rho_plus_slack < 0.0)
    throw std::invalid_argument("choose_k_no_update: estimate must be nonnegative");
  const double d0 = std::sqrt(2.0 * eps / bm.constants.m) + rho_plus_slack;
  return invert_bound(bm, d0, eps);
}

UpdatePastResult choose_k_update_past(const BoundModel& bm, double eps,
                                      double rho_plus_slack, double diam,
                                      std::span<const long> k_history) {
  if (k_history.size() < 2)
    throw std::invalid_argument("choose_k_update_past: need at least two past steps");
  if (rho_plus_slack < 0.0)
    throw std::invalid_argument("choose_k_update_past: estimate must be nonnegative");

  UpdatePastResult res;
  res.chain.resize(k_history.size());
  res.chain[0] = bound_eval(bm, diam, static_cast<double>(k_history[0]));
  res.chain[1] = bound_eval(bm, diam, static_cast<double>(k_history[1]));
  for (std::size_t i = 2; i < k_history.size(); ++i)
    res.chain[i] = epsilon_recursion(bm, res.chain[i - 1], rho_plus_slack, k_history[i]);

  const double eps_prev = std::max(res.chain.back(), eps);
  res.d0 = std::sqrt(2.0 * eps_prev / bm.constants.m) + rho_plus_slack;
  res.k = invert_bound(bm, res.d0, eps);
  res.eps_next = bound_eval(bm, res.d0, static_cast<double>(res.k.k));
  return res;
}

AdaptiveDecision decide_adaptive(PolicyKind kind, long n, const BoundModel& bm, double eps,
                                 long k_init, double rho_plus_slack, double diam,
                                 std::span<const long> k_history) {
  if (n < 1) throw std::invalid_argument("decide_adaptive: n must be >= 1");
  if (static_cast<long>(k_history.size()) != n - 1)
    throw std::invalid_argument("decide_adaptive: history length must be n-1");

  AdaptiveDecision d;
  if (n <= 2) {
    d.k = k_init;
    d.d0 = diam;
    d.eps_hat = bound_eval(bm, diam, static_cast<double>(k_init));
    d.saturated = d.eps_hat > eps;
    return d;
  }

  switch (kind) {
    case PolicyKind::known_rho: {
      // Chain anchored at the step-2 initialization value, then recursed.
      double chain = bound_eval(bm, diam, static_cast<double>(k_history[1]));
      for (std::size_t i = 2; i < k_history.size(); ++i)
        chain = epsilon_recursion(bm, chain, rho_plus_slack, k_history[i]);
      const InvertResult r = k_star(bm, rho_plus_slack, eps);
      d.k = r.k;
      d.saturated = r.saturated;
      d.d0 = std::sqrt(2.0 * chain / bm.constants.m) + rho_plus_slack;
      d.eps_hat = bound_eval(bm, d.d0, static_cast<double>(r.k));
      return d;
    }
    case PolicyKind::no_update: {
      const InvertResult r = choose_k_no_update(bm, eps, rho_plus_slack);
      d.k = r.k;
      d.saturated = r.saturated;
      d.d0 = std::sqrt(2.0 * eps / bm.constants.m) + rho_plus_slack;
      d.eps_hat = bound_eval(bm, d.d0, static_cast<double>(r.k));
      return d;
    }
    case PolicyKind::update_past: {
      const UpdatePastResult r =
          choose_k_update_past(bm, eps, rho_plus_slack, diam, k_history);
      d.k = r.k.k;
      d.saturated = r.k.saturated;
      d.d0 = r.d0;
      d.eps_hat = r.eps_next;
      return d;
    }
    default:
      throw std::invalid_argument("decide_adaptive: not an adaptive policy kind");
  }
}

std::vector<long> baseline_schedule(PolicyKind kind, long total, long t, long delta_t) {
  if (t < 1) throw std::invalid_argument("baseline_schedule: horizon must be >= 1");
  if (total < 0) throw std::invalid_argument("baseline_schedule: total must be nonnegative");
  std::vector<long> ks(static_cast<std::size_t>(t), 0);
  if (kind == PolicyKind::up_front) {
    ks[0] = total;
    return ks;
  }
  if (kind != PolicyKind::periodic)
    throw std::invalid_argument("baseline_schedule: kind must be up_front or periodic");
  if (delta_t < 1) throw std::invalid_argument("baseline_schedule: delta_t must be >= 1");
  long events = 0;
  for (long n = 1; n <= t; ++n)
    if ((n - 1) % delta_t == 0) ++events;
  const long batch = total / events;
  for (long n = 1; n <= t; ++n)
    if ((n - 1) % delta_t == 0) ks[static_cast<std::size_t>(n - 1)] = batch;
  return ks;
}

} // namespace driftk
