#pragma once

#include <span>

#include "driftk/loss.hpp"
#include "driftk/samples.hpp"
#include "driftk/vec.hpp"

namespace driftk {

// Step size schedule eta_k = c / (k + k0) for k = 1..K. For an m-strongly
// convex risk take c = 1/m and pick k0 large enough that eta_1 <= 1/M.
struct SgdConfig {
  double c = 1.0;
  double k0 = 1.0;

  void validate() const;
};

// One projected pass over the batch in sample order, starting from w_start,
// constrained to the centered ball of the given radius. K = 0 returns
// w_start unchanged. Throws on a non-finite gradient, naming the step.
VecD sgd_pass(std::span<const double> w_start, const SampleBatch& batch, const Loss& loss,
              const SgdConfig& cfg, double radius);

} // namespace driftk
