#pragma once

#include <cstdint>
#include <span>

#include "driftk/kernels.hpp"
#include "driftk/loss.hpp"
#include "driftk/scenario.hpp"
#include "driftk/vec.hpp"

namespace driftk {

// Probability that a random positive outscores a random negative, ties at
// half credit (Mann-Whitney form). Labels must be +-1 and both classes
// must be present.
double roc_auc(std::span<const double> scores, std::span<const double> labels);

// Mean loss at w over `count` held-out draws from the scenario's test
// stream for step n.
double test_loss(const Loss& loss, const VecD& w, const Scenario& scenario,
                 std::uint64_t seed, long n, long count, Exec exec = Exec::parallel);

} // namespace driftk
