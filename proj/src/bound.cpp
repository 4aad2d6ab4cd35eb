#include "driftk/bound.hpp"

#include <cmath>
#include <stdexcept>

namespace driftk {

void BoundModel::validate() const {
  constants.validate();
  if (c_alpha < 0.0 || !(c_beta > 0.0))
    throw std::invalid_argument("bound: need c_alpha >= 0 and c_beta > 0");
  if (k_cap < 1) throw std::invalid_argument("bound: k_cap must be >= 1");
}

double default_c_alpha(const ConvexityConstants& c) { return c.G * c.G / c.m; }

double default_c_beta(const ConvexityConstants& c) { return c.A / (2.0 * c.m); }

double bound_eval(const BoundModel& bm, double d0, double k) {
  if (!(k > 0.0)) throw std::invalid_argument("bound_eval: K must be positive");
  if (d0 < 0.0) throw std::invalid_argument("bound_eval: d0 must be nonnegative");
  return bm.c_alpha * d0 * d0 / (k * k) + bm.c_beta / k;
}

double descent_bound_e(const ConvexityConstants& c, double dist2) {
  if (dist2 < 0.0) throw std::invalid_argument("descent_bound_e: dist2 must be nonnegative");
  return 0.5 * c.M * dist2;
}

InvertResult invert_bound(const BoundModel& bm, double d0, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("invert_bound: eps must be positive");
  if (d0 < 0.0) throw std::invalid_argument("invert_bound: d0 must be nonnegative");

  // Closed-form root of c_alpha d0^2 / K^2 + c_beta / K = eps, then a local
  // scan to the exact integer minimum.
  const double disc = bm.c_beta * bm.c_beta + 4.0 * eps * bm.c_alpha * d0 * d0;
  double guess = (bm.c_beta + std::sqrt(disc)) / (2.0 * eps);
  long k = static_cast<long>(std::ceil(guess));
  if (k < 1) k = 1;
  if (k > bm.k_cap) k = bm.k_cap;
  while (k > 1 && bound_eval(bm, d0, static_cast<double>(k - 1)) <= eps) --k;
  while (k < bm.k_cap && bound_eval(bm, d0, static_cast<double>(k)) > eps) ++k;
  const bool saturated = bound_eval(bm, d0, static_cast<double>(k)) > eps;
  return {k, saturated};
}

double epsilon_recursion(const BoundModel& bm, double eps_prev, double rho, long k) {
  if (eps_prev < 0.0)
    throw std::invalid_argument("epsilon_recursion: eps_prev must be nonnegative");
  if (rho < 0.0) throw std::invalid_argument("epsilon_recursion: rho must be nonnegative");
  const double d0 = std::sqrt(2.0 * eps_prev / bm.constants.m) + rho;
  return bound_eval(bm, d0, static_cast<double>(k));
}

RiskTracker tracker_advance(const RiskTracker& rt, const BoundModel& bm, double rho,
                            double k_n, long n) {
  if (n != rt.step + 1) throw std::invalid_argument("tracker_advance: steps must be consecutive");
  if (k_n < 0.0) throw std::invalid_argument("tracker_advance: K must be nonnegative");
  if (rho < 0.0) throw std::invalid_argument("tracker_advance: rho must be nonnegative");

  RiskTracker next = rt;
  next.step = n;
  const bool sampled = k_n > 0.0;

  if (!rt.last_sampled.has_value()) {
    if (!sampled) {
      // Nothing known beyond membership in X.
      next.current = descent_bound_e(bm.constants, rt.diameter * rt.diameter);
      return next;
    }
    // First samples ever: the start point is within diam(X) of the minimizer.
    next.current = bound_eval(bm, rt.diameter, k_n);
    next.last_sampled = n;
    next.eps_at_last_sample = next.current;
    return next;
  }

  const double gap = static_cast<double>(n - *rt.last_sampled);
  const double reach = std::sqrt(2.0 * rt.eps_at_last_sample / bm.constants.m) + gap * rho;
  if (!sampled) {
    // Iterate frozen since t_s while the minimizer moved up to gap*rho.
    next.current = descent_bound_e(bm.constants, reach * reach);
    return next;
  }
  const double d0 =
      std::sqrt(4.0 * rt.eps_at_last_sample / bm.constants.m + 2.0 * gap * gap * rho * rho);
  next.current = bound_eval(bm, d0, k_n);
  next.last_sampled = n;
  next.eps_at_last_sample = next.current;
  return next;
}

} // namespace driftk
