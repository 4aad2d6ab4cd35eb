#pragma once

#include <stdexcept>

namespace driftk {

// Curvature and noise constants of the risk family. m and M are the strong
// convexity and smoothness moduli; G bounds the stochastic gradient norm,
// A and B bound its second moment as A + B*dist^2 to the minimizer, sigma
// bounds the gradient noise, and M_noise is the mean-square Lipschitz
// constant of the stochastic gradient map.
struct ConvexityConstants {
  double m = 1.0;
  double M = 1.0;
  double G = 1.0;
  double A = 1.0;
  double B = 1.0;
  double sigma = 1.0;
  double M_noise = 1.0;

  void validate() const {
    if (!(m > 0.0)) throw std::invalid_argument("constants: m must be positive");
    if (!(M >= m)) throw std::invalid_argument("constants: M must be >= m");
    if (G < 0.0 || A < 0.0 || B < 0.0 || sigma < 0.0 || M_noise < 0.0)
      throw std::invalid_argument("constants: noise bounds must be nonnegative");
  }
};

} // namespace driftk
