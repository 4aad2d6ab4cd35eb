#include "driftk/loss.hpp"

#include <memory>
#include <stdexcept>

namespace driftk {

QuadraticLoss::QuadraticLoss(int dim, double lambda) : d_(dim), lambda_(lambda) {
  if (dim <= 0) throw std::invalid_argument("QuadraticLoss: dim must be positive");
  if (lambda < 0.0) throw std::invalid_argument("QuadraticLoss: lambda must be nonnegative");
}

double QuadraticLoss::value(std::span<const double> w, std::span<const double> x,
                            double y) const {
  const double r = y - dot(x, w);
  return 0.5 * r * r + 0.5 * lambda_ * norm2(w);
}

void QuadraticLoss::gradient(std::span<const double> w, std::span<const double> x, double y,
                             std::span<double> out) const {
  const double r = dot(x, w) - y;
  for (int i = 0; i < d_; ++i) out[i] = x[i] * r + lambda_ * w[i];
}

std::unique_ptr<Loss> QuadraticLoss::with_lambda(double lambda) const {
  return std::make_unique<QuadraticLoss>(d_, lambda);
}

SmoothedHingeLoss::SmoothedHingeLoss(int dim, double lambda) : d_(dim), lambda_(lambda) {
  if (dim <= 0) throw std::invalid_argument("SmoothedHingeLoss: dim must be positive");
  if (lambda < 0.0)
    throw std::invalid_argument("SmoothedHingeLoss: lambda must be nonnegative");
}

double SmoothedHingeLoss::value(std::span<const double> w, std::span<const double> x,
                                double y) const {
  const double gap = 1.0 - y * dot(x, w);
  const double hinge = gap > 0.0 ? gap : 0.0;
  return 0.5 * hinge * hinge + 0.5 * lambda_ * norm2(w);
}

void SmoothedHingeLoss::gradient(std::span<const double> w, std::span<const double> x,
                                 double y, std::span<double> out) const {
  const double gap = 1.0 - y * dot(x, w);
  const double coef = gap > 0.0 ? -y * gap : 0.0;
  for (int i = 0; i < d_; ++i) out[i] = coef * x[i] + lambda_ * w[i];
}

std::unique_ptr<Loss> SmoothedHingeLoss::with_lambda(double lambda) const {
  return std::make_unique<SmoothedHingeLoss>(d_, lambda);
}

VecD quadratic_exact_minimizer(std::span<const double> r, double sigma_x2, double lambda) {
  if (!(sigma_x2 > 0.0))
    throw std::invalid_argument("quadratic_exact_minimizer: sigma_x2 must be positive");
  VecD w(r.size());
  const double s = 1.0 / (sigma_x2 + lambda);
  for (std::size_t i = 0; i < r.size(); ++i) w[i] = r[i] * s;
  return w;
}

// E ell(w, z) for x ~ N(0, sigma_x2 I), Cov(x, y) = r, Var(y) = sigma_y2:
// (1/2)(sigma_x2 ||w||^2 - 2 r.w + sigma_y2) + (lambda/2)||w||^2.
double quadratic_exact_risk(std::span<const double> w, std::span<const double> r,
                            double sigma_x2, double sigma_y2, double lambda) {
  if (sigma_y2 * sigma_x2 < norm2(r))
    throw std::invalid_argument("quadratic_exact_risk: covariance not PSD");
  return 0.5 * (sigma_x2 * norm2(w) - 2.0 * dot(r, w) + sigma_y2) + 0.5 * lambda * norm2(w);
}

double quadratic_exact_excess(std::span<const double> w, std::span<const double> r,
                              double sigma_x2, double sigma_y2, double lambda) {
  const VecD wstar = quadratic_exact_minimizer(r, sigma_x2, lambda);
  return quadratic_exact_risk(w, r, sigma_x2, sigma_y2, lambda) -
         quadratic_exact_risk(wstar, r, sigma_x2, sigma_y2, lambda);
}

} // namespace driftk
