#include "driftk/kernels.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

#ifdef DRIFTK_HAVE_OPENMP
#include <omp.h>
#endif

namespace driftk {

namespace {

std::size_t block_count(std::size_t n) { return (n + kBlockSize - 1) / kBlockSize; }

} // namespace

void mean_gradient(const Loss& loss, std::span<const double> w, const SampleBatch& batch,
                   VecD& out, Exec exec) {
  if (batch.empty()) throw std::invalid_argument("mean_gradient: empty batch");
  const std::size_t k = batch.size();
  const std::size_t d = static_cast<std::size_t>(loss.dim());
  const std::size_t nb = block_count(k);
  std::vector<double> partials(nb * d, 0.0);

  // Each block accumulates its samples left to right; block partials are
  // later combined in block order, so serial and parallel agree exactly.
#ifdef DRIFTK_HAVE_OPENMP
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
#endif
  for (std::size_t b = 0; b < nb; ++b) {
    VecD g(d);
    double* acc = partials.data() + b * d;
    const std::size_t hi = std::min(k, (b + 1) * kBlockSize);
    for (std::size_t i = b * kBlockSize; i < hi; ++i) {
      loss.gradient(w, batch.x(i), batch.y(i), g);
      for (std::size_t j = 0; j < d; ++j) acc[j] += g[j];
    }
  }
#ifndef DRIFTK_HAVE_OPENMP
  (void)exec;
#endif

  out.assign(d, 0.0);
  for (std::size_t b = 0; b < nb; ++b)
    for (std::size_t j = 0; j < d; ++j) out[j] += partials[b * d + j];
  const double inv = 1.0 / static_cast<double>(k);
  for (std::size_t j = 0; j < d; ++j) out[j] *= inv;
}

double mean_loss(const Loss& loss, std::span<const double> w, const SampleBatch& batch,
                 Exec exec) {
  if (batch.empty()) throw std::invalid_argument("mean_loss: empty batch");
  const std::size_t k = batch.size();
  const std::size_t nb = block_count(k);
  std::vector<double> partials(nb, 0.0);

#ifdef DRIFTK_HAVE_OPENMP
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
#endif
  for (std::size_t b = 0; b < nb; ++b) {
    double acc = 0.0;
    const std::size_t hi = std::min(k, (b + 1) * kBlockSize);
    for (std::size_t i = b * kBlockSize; i < hi; ++i)
      acc += loss.value(w, batch.x(i), batch.y(i));
    partials[b] = acc;
  }
#ifndef DRIFTK_HAVE_OPENMP
  (void)exec;
#endif

  double sum = 0.0;
  for (std::size_t b = 0; b < nb; ++b) sum += partials[b];
  return sum / static_cast<double>(k);
}

void mean_gradient_ref(const Loss& loss, std::span<const double> w,
                       const SampleBatch& batch, VecD& out) {
  if (batch.empty()) throw std::invalid_argument("mean_gradient_ref: empty batch");
  const std::size_t d = static_cast<std::size_t>(loss.dim());
  out.assign(d, 0.0);
  VecD g(d);
  for (std::size_t i = 0; i < batch.size(); ++i) {
    loss.gradient(w, batch.x(i), batch.y(i), g);
    for (std::size_t j = 0; j < d; ++j) out[j] += g[j];
  }
  const double inv = 1.0 / static_cast<double>(batch.size());
  for (std::size_t j = 0; j < d; ++j) out[j] *= inv;
}

double mean_loss_ref(const Loss& loss, std::span<const double> w, const SampleBatch& batch) {
  if (batch.empty()) throw std::invalid_argument("mean_loss_ref: empty batch");
  double sum = 0.0;
  for (std::size_t i = 0; i < batch.size(); ++i)
    sum += loss.value(w, batch.x(i), batch.y(i));
  return sum / static_cast<double>(batch.size());
}

} // namespace driftk
