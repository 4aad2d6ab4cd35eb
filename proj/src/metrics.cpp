#include "driftk/metrics.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace driftk {

double roc_auc(std::span<const double> scores, std::span<const double> labels) {
  if (scores.size() != labels.size() || scores.empty())
    throw std::invalid_argument("roc_auc: scores and labels must match and be nonempty");
  std::size_t pos = 0, neg = 0;
  for (double y : labels) {
    if (y == 1.0)
      ++pos;
    else if (y == -1.0)
      ++neg;
    else
      throw std::invalid_argument("roc_auc: labels must be +1 or -1");
  }
  if (pos == 0 || neg == 0)
    throw std::invalid_argument("roc_auc: both classes must be present");

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

  // Rank sum of positives with average ranks across tie groups.
  double rank_sum_pos = 0.0;
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && scores[order[j + 1]] == scores[order[i]]) ++j;
    const double avg_rank = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j + 1));
    for (std::size_t t = i; t <= j; ++t)
      if (labels[order[t]] == 1.0) rank_sum_pos += avg_rank;
    i = j + 1;
  }
  const double p = static_cast<double>(pos);
  const double q = static_cast<double>(neg);
  return (rank_sum_pos - p * (p + 1.0) / 2.0) / (p * q);
}

double test_loss(const Loss& loss, const VecD& w, const Scenario& scenario,
                 std::uint64_t seed, long n, long count, Exec exec) {
  if (count < 1) throw std::invalid_argument("test_loss: count must be >= 1");
  SampleBatch batch(scenario.dim());
  scenario.fill_test(seed, n, count, batch);
  return mean_loss(loss, w, batch, exec);
}

} // namespace driftk
