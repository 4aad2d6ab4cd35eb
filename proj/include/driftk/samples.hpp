#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace driftk {

// Flat batch of labelled samples (x in R^d, scalar y). Row-major feature
// storage keeps the kernels cache friendly and allocation free.
struct SampleBatch {
  int d = 0;
  std::vector<double> xs;
  std::vector<double> ys;

  SampleBatch() = default;
  explicit SampleBatch(int dim) : d(dim) {}

  std::size_t size() const { return ys.size(); }
  bool empty() const { return ys.empty(); }

  void clear() {
    xs.clear();
    ys.clear();
  }

  void resize(std::size_t count) {
    xs.resize(count * static_cast<std::size_t>(d));
    ys.resize(count);
  }

  std::span<const double> x(std::size_t i) const {
    return {xs.data() + i * static_cast<std::size_t>(d), static_cast<std::size_t>(d)};
  }
  std::span<double> x(std::size_t i) {
    return {xs.data() + i * static_cast<std::size_t>(d), static_cast<std::size_t>(d)};
  }
  double y(std::size_t i) const { return ys[i]; }

  void push_back(std::span<const double> xi, double yi) {
    xs.insert(xs.end(), xi.begin(), xi.end());
    ys.push_back(yi);
  }
};

} // namespace driftk
