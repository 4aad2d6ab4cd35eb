#include "driftk/sgd.hpp"

#include <stdexcept>
#include <string>

namespace driftk {

void SgdConfig::validate() const {
  if (!(c > 0.0)) throw std::invalid_argument("sgd: c must be positive");
  if (!(k0 >= 0.0)) throw std::invalid_argument("sgd: k0 must be nonnegative");
}

VecD sgd_pass(std::span<const double> w_start, const SampleBatch& batch, const Loss& loss,
              const SgdConfig& cfg, double radius) {
  cfg.validate();
  if (!all_finite(w_start)) throw std::invalid_argument("sgd: non-finite start point");
  VecD w(w_start.begin(), w_start.end());
  if (batch.empty()) return w;

  const std::size_t d = static_cast<std::size_t>(loss.dim());
  VecD g(d);
  for (std::size_t i = 0; i < batch.size(); ++i) {
    loss.gradient(w, batch.x(i), batch.y(i), g);
    if (!all_finite(g))
      throw std::runtime_error("sgd: non-finite gradient at step " + std::to_string(i + 1));
    const double eta = cfg.c / (static_cast<double>(i + 1) + cfg.k0);
    for (std::size_t j = 0; j < d; ++j) w[j] -= eta * g[j];
    project_to_ball(w, radius);
  }
  return w;
}

} // namespace driftk
