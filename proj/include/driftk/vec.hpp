#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

namespace driftk {

using VecD = std::vector<double>;

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm2(std::span<const double> a) { return dot(a, a); }

inline double norm(std::span<const double> a) { return std::sqrt(norm2(a)); }

inline double distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

inline bool all_finite(std::span<const double> a) {
  for (double v : a)
    if (!std::isfinite(v)) return false;
  return true;
}

// Euclidean projection onto the centered ball of the given radius.
// Identity for interior points; radial rescale outside.
inline void project_to_ball(VecD& w, double radius) {
  if (radius <= 0.0) throw std::invalid_argument("project_to_ball: radius must be positive");
  if (!all_finite(w)) throw std::invalid_argument("project_to_ball: non-finite input");
  const double r = norm(w);
  if (r <= radius) return;
  const double s = radius / r;
  for (double& v : w) v *= s;
}

} // namespace driftk
