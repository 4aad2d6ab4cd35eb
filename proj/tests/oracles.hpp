#pragma once

// Independent oracles for the property tests: brute-force and Monte-Carlo
// reimplementations of quantities the library computes cleverly. Kept dumb
// on purpose so a shared bug with the production code is unlikely.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "driftk/loss.hpp"
#include "driftk/rng.hpp"
#include "driftk/vec.hpp"

namespace oracles {

// Central finite-difference gradient of the per-sample loss in w.
inline driftk::VecD fd_gradient(const driftk::Loss& loss, const driftk::VecD& w,
                                std::span<const double> x, double y, double h) {
  driftk::VecD g(w.size());
  driftk::VecD wp(w), wm(w);
  for (std::size_t i = 0; i < w.size(); ++i) {
    wp[i] = w[i] + h;
    wm[i] = w[i] - h;
    g[i] = (loss.value(wp, x, y) - loss.value(wm, x, y)) / (2.0 * h);
    wp[i] = w[i];
    wm[i] = w[i];
  }
  return g;
}

struct McEstimate {
  double mean = 0.0;
  double se = 0.0;
};

// Monte-Carlo population risk of the Gaussian regression model
// x ~ N(0, sigma_x2 I), y = r.x / sigma_x2 + noise, Var(y) = sigma_y2.
inline McEstimate mc_quadratic_risk(const driftk::VecD& w, const driftk::VecD& r,
                                    double sigma_x2, double sigma_y2, double lambda,
                                    long samples, std::uint64_t seed) {
  const std::size_t d = r.size();
  const double sx = std::sqrt(sigma_x2);
  const double noise_sd = std::sqrt(sigma_y2 - driftk::norm2(r) / sigma_x2);
  const double ridge = 0.5 * lambda * driftk::norm2(w);
  driftk::VecD g(d + 1);
  double sum = 0.0, sumsq = 0.0;
  for (long i = 0; i < samples; ++i) {
    driftk::rng_normals(seed, driftk::Stream::mc, 1, static_cast<std::uint64_t>(i), 0, g);
    double xw = 0.0, xr = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      const double xj = sx * g[j];
      xw += xj * w[j];
      xr += xj * r[j];
    }
    const double y = xr / sigma_x2 + noise_sd * g[d];
    const double resid = y - xw;
    const double v = 0.5 * resid * resid + ridge;
    sum += v;
    sumsq += v * v;
  }
  const double n = static_cast<double>(samples);
  McEstimate e;
  e.mean = sum / n;
  const double var = std::max(0.0, (sumsq - n * e.mean * e.mean) / (n - 1.0));
  e.se = std::sqrt(var / n);
  return e;
}

// O(T^2) scan over all contiguous non-decreasing segments of length >= 2.
// Entries are nonnegative, so this equals the max over maximal runs.
inline double brute_phi_max_increasing_run(std::span<const double> xi) {
  double best = 0.0;
  for (std::size_t a = 0; a < xi.size(); ++a) {
    double sum = xi[a];
    for (std::size_t b = a + 1; b < xi.size(); ++b) {
      if (xi[b] < xi[b - 1]) break;
      sum += xi[b];
      best = std::max(best, sum);
    }
  }
  return best;
}

// All-pairs AUC, ties at half credit.
inline double brute_auc(std::span<const double> scores, std::span<const double> labels) {
  double wins = 0.0;
  long pairs = 0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (labels[i] != 1.0) continue;
    for (std::size_t j = 0; j < scores.size(); ++j) {
      if (labels[j] != -1.0) continue;
      ++pairs;
      if (scores[i] > scores[j])
        wins += 1.0;
      else if (scores[i] == scores[j])
        wins += 0.5;
    }
  }
  return wins / static_cast<double>(pairs);
}

// Every vector of the given length with entries drawn from `alphabet`,
// enumerated in mixed-radix order.
inline std::vector<driftk::VecD> all_vectors(std::size_t length,
                                             std::span<const double> alphabet) {
  std::vector<driftk::VecD> out;
  std::size_t total = 1;
  for (std::size_t i = 0; i < length; ++i) total *= alphabet.size();
  out.reserve(total);
  for (std::size_t code = 0; code < total; ++code) {
    driftk::VecD v(length);
    std::size_t c = code;
    for (std::size_t i = 0; i < length; ++i) {
      v[i] = alphabet[c % alphabet.size()];
      c /= alphabet.size();
    }
    out.push_back(std::move(v));
  }
  return out;
}

} // namespace oracles
