#pragma once

#include <memory>
#include <span>

#include "driftk/samples.hpp"
#include "driftk/vec.hpp"

namespace driftk {

// Per-sample loss ell(w, (x, y)) with an optional ridge term
// (lambda/2)*||w||^2 folded in. Implementations must be stateless so one
// instance can be shared across threads.
class Loss {
public:
  virtual ~Loss() = default;

  virtual int dim() const = 0;
  virtual double lambda() const = 0;

  virtual double value(std::span<const double> w, std::span<const double> x,
                       double y) const = 0;
  // Writes the gradient of value() with respect to w into out.
  virtual void gradient(std::span<const double> w, std::span<const double> x, double y,
                        std::span<double> out) const = 0;

  // Same loss family with a different ridge weight (used by the
  // cross-validation tracks and the lambda=0 scorer).
  virtual std::unique_ptr<Loss> with_lambda(double lambda) const = 0;

  // Strong convexity modulus guaranteed by the per-sample loss alone.
  // Zero when only the data term could provide curvature.
  virtual double ridge_strong_convexity() const = 0;
};

// Squared error (1/2)(y - x.w)^2 + (lambda/2)||w||^2.
class QuadraticLoss final : public Loss {
public:
  QuadraticLoss(int dim, double lambda);

  int dim() const override { return d_; }
  double lambda() const override { return lambda_; }
  double value(std::span<const double> w, std::span<const double> x,
               double y) const override;
  void gradient(std::span<const double> w, std::span<const double> x, double y,
                std::span<double> out) const override;
  std::unique_ptr<Loss> with_lambda(double lambda) const override;
  double ridge_strong_convexity() const override { return lambda_; }

private:
  int d_;
  double lambda_;
};

// Smoothed hinge (1/2)max(0, 1 - y x.w)^2 + (lambda/2)||w||^2 with labels
// y in {-1, +1}.
class SmoothedHingeLoss final : public Loss {
public:
  SmoothedHingeLoss(int dim, double lambda);

  int dim() const override { return d_; }
  double lambda() const override { return lambda_; }
  double value(std::span<const double> w, std::span<const double> x,
               double y) const override;
  void gradient(std::span<const double> w, std::span<const double> x, double y,
                std::span<double> out) const override;
  std::unique_ptr<Loss> with_lambda(double lambda) const override;
  double ridge_strong_convexity() const override { return lambda_; }

private:
  int d_;
  double lambda_;
};

// Population quantities for the Gaussian linear regression model
// x ~ N(0, sigma_x2 I), y = r.x / sigma_x2 + noise. All exact.
VecD quadratic_exact_minimizer(std::span<const double> r, double sigma_x2, double lambda);
double quadratic_exact_risk(std::span<const double> w, std::span<const double> r,
                            double sigma_x2, double sigma_y2, double lambda);
double quadratic_exact_excess(std::span<const double> w, std::span<const double> r,
                              double sigma_x2, double sigma_y2, double lambda);

} // namespace driftk
