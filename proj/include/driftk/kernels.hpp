#pragma once

#include <span>

#include "driftk/loss.hpp"
#include "driftk/samples.hpp"
#include "driftk/vec.hpp"

namespace driftk {

// Execution mode for the sample kernels. Both modes run the same blocked
// summation (fixed block size, partials combined in block order), so their
// results are bit-identical; `parallel` merely computes block partials
// concurrently when OpenMP is available.
enum class Exec { serial, parallel };

// Number of samples per summation block. Part of the numeric contract:
// changing it changes low-order bits of every reduction.
inline constexpr std::size_t kBlockSize = 1024;

// out := (1/K) sum_i grad ell(w, z_i). Requires a nonempty batch.
void mean_gradient(const Loss& loss, std::span<const double> w, const SampleBatch& batch,
                   VecD& out, Exec exec);

// (1/K) sum_i ell(w, z_i). Requires a nonempty batch.
double mean_loss(const Loss& loss, std::span<const double> w, const SampleBatch& batch,
                 Exec exec);

// Straightforward left-to-right reference implementations, kept for testing
// the blocked kernels against.
void mean_gradient_ref(const Loss& loss, std::span<const double> w,
                       const SampleBatch& batch, VecD& out);
double mean_loss_ref(const Loss& loss, std::span<const double> w, const SampleBatch& batch);

} // namespace driftk
