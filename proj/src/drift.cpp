#include "driftk/drift.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace driftk {

void DriftConfig::validate() const {
  if (window < 1) throw std::invalid_argument("drift: window must be >= 1");
  if (!(c_t >= 0.0)) throw std::invalid_argument("drift: c_t must be nonnegative");
  if (c_c < 0.0) throw std::invalid_argument("drift: c_c must be nonnegative");
}

double rho_tilde_from_norms(double iterate_gap, double grad_norm_i, double grad_norm_prev,
                            double m, double diam) {
  if (!(m > 0.0)) throw std::invalid_argument("rho_tilde: m must be positive");
  if (iterate_gap < 0.0 || grad_norm_i < 0.0 || grad_norm_prev < 0.0)
    throw std::invalid_argument("rho_tilde: norms must be nonnegative");
  const double raw = iterate_gap + grad_norm_i / m + grad_norm_prev / m;
  return std::min(raw, diam);
}

OneStepEstimate one_step_estimate(long i, std::span<const double> w_i,
                                  std::span<const double> w_prev, const SampleBatch& batch_i,
                                  const SampleBatch& batch_prev, const Loss& loss, double m,
                                  double diam, Exec exec) {
  if (batch_i.empty() || batch_prev.empty())
    throw std::invalid_argument("one_step_estimate: both sample sets must be nonempty");
  VecD g;
  mean_gradient(loss, w_i, batch_i, g, exec);
  const double gi = norm(g);
  mean_gradient(loss, w_prev, batch_prev, g, exec);
  const double gp = norm(g);
  return {i, rho_tilde_from_norms(distance(w_i, w_prev), gi, gp, m, diam)};
}

double combine_average(std::span<const OneStepEstimate> estimates) {
  if (estimates.empty()) throw std::invalid_argument("combine_average: empty history");
  double s = 0.0;
  for (const auto& e : estimates) s += e.value;
  return s / static_cast<double>(estimates.size());
}

double window_estimator_uniform(std::span<const double> window) {
  if (window.empty()) throw std::invalid_argument("window_estimator: empty window");
  const double mx = *std::max_element(window.begin(), window.end());
  const double w = static_cast<double>(window.size());
  return (w + 1.0) / w * mx;
}

double combine_windowed(std::span<const OneStepEstimate> estimates, int w) {
  if (estimates.empty()) throw std::invalid_argument("combine_windowed: empty history");
  if (w < 1) throw std::invalid_argument("combine_windowed: window must be >= 1");
  double s = 0.0;
  std::vector<double> buf;
  for (std::size_t j = 0; j < estimates.size(); ++j) {
    const std::size_t len = std::min<std::size_t>(j + 1, static_cast<std::size_t>(w));
    buf.clear();
    for (std::size_t t = j + 1 - len; t <= j; ++t) buf.push_back(estimates[t].value);
    s += window_estimator_uniform(buf);
  }
  return s / static_cast<double>(estimates.size());
}

double slack(long n, double c_t) {
  if (n < 2) throw std::invalid_argument("slack: defined for n >= 2");
  return c_t / std::sqrt(static_cast<double>(n - 1));
}

double correction_dn(std::span<const double> c_values, std::span<const long> k_values,
                     const ConvexityConstants& constants) {
  if (c_values.size() != k_values.size())
    throw std::invalid_argument("correction_dn: history lengths differ");
  const std::size_t l = c_values.size();
  if (l < 2) throw std::invalid_argument("correction_dn: need at least two sampled steps");
  const double ratio = 1.0 + constants.M / constants.m;
  auto term = [&](std::size_t i) {
    if (k_values[i] < 1) throw std::invalid_argument("correction_dn: K must be >= 1");
    return ratio * c_values[i] +
           std::sqrt(constants.sigma / static_cast<double>(k_values[i]));
  };
  double s = term(0) + term(l - 1);
  for (std::size_t i = 1; i + 1 < l; ++i) s += 2.0 * term(i);
  return s / static_cast<double>(l - 1);
}

double overshoot_margin(double eps, const ConvexityConstants& constants, double c_c,
                        long k_tilde) {
  if (!(eps > 0.0)) throw std::invalid_argument("overshoot_margin: eps must be positive");
  if (k_tilde < 1) throw std::invalid_argument("overshoot_margin: K must be >= 1");
  if (c_c < 0.0) throw std::invalid_argument("overshoot_margin: c_c must be nonnegative");
  const double m = constants.m;
  const double big_m = constants.M;
  const double c_k = std::sqrt(c_c / static_cast<double>(k_tilde));
  return 2.0 * std::sqrt(2.0) * big_m / (m * std::sqrt(m)) * eps +
         2.0 * big_m / m * c_k +
         std::sqrt(constants.sigma / static_cast<double>(k_tilde)) / m;
}

DriftEstimator::DriftEstimator(DriftConfig cfg, const ConvexityConstants& constants,
                               double diam)
    : cfg_(cfg), constants_(constants), diam_(diam) {
  cfg_.validate();
  constants_.validate();
  if (!(diam > 0.0)) throw std::invalid_argument("DriftEstimator: diam must be positive");
}

void DriftEstimator::observe(long n, long k, const VecD& w, double grad_norm) {
  if (k == 0) {
    // A skipped step breaks the consecutive pair; no estimate is produced
    // and nothing is zero-filled.
    prev_.reset();
    return;
  }
  if (k < 0) throw std::invalid_argument("DriftEstimator: negative K");
  c_history_.push_back(std::sqrt(cfg_.c_c / static_cast<double>(k)));
  k_history_.push_back(k);
  if (prev_.has_value() && prev_->n == n - 1) {
    const double val = rho_tilde_from_norms(distance(w, prev_->w), grad_norm,
                                            prev_->grad_norm, constants_.m, diam_);
    estimates_.push_back({n, val});
  }
  prev_ = Prev{n, w, grad_norm};
}

double DriftEstimator::rho_hat() const {
  if (cfg_.mode == DriftMode::average) return combine_average(estimates_);
  return combine_windowed(estimates_, cfg_.window);
}

// In windowed mode the correction is rescaled by ((n-1)/(n-W)) * ((W+1)/W);
// until the first window fills, the calendar factor is held at n-1.
double DriftEstimator::windowed_scale(long n) const {
  if (cfg_.mode == DriftMode::average) return 1.0;
  const double w = static_cast<double>(cfg_.window);
  const double denom = std::max<long>(1, n - cfg_.window);
  return (static_cast<double>(n - 1) / static_cast<double>(denom)) * (w + 1.0) / w;
}

double DriftEstimator::correction(long n) const {
  if (c_history_.size() < 2) return 0.0;
  return correction_dn(c_history_, k_history_, constants_) * windowed_scale(n);
}

} // namespace driftk
