#include "driftk/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "driftk/loss.hpp"

namespace driftk {

namespace {

// Keyed Fisher-Yates permutation of [0, size) for without-replacement pools.
std::vector<long> keyed_permutation(std::uint64_t seed, long n, long size) {
  std::vector<long> perm(static_cast<std::size_t>(size));
  for (long i = 0; i < size; ++i) perm[static_cast<std::size_t>(i)] = i;
  for (long i = size - 1; i > 0; --i) {
    const std::uint64_t r =
        rng_u64(seed, Stream::shuffle, static_cast<std::uint64_t>(n),
                static_cast<std::uint64_t>(i), 0);
    const long j = static_cast<long>(r % static_cast<std::uint64_t>(i + 1));
    std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
  }
  return perm;
}

} // namespace

void RegressionScenarioConfig::validate() const {
  if (d < 2) throw std::invalid_argument("regression scenario: d must be >= 2");
  if (!(sigma_x2 > 0.0))
    throw std::invalid_argument("regression scenario: sigma_x2 must be positive");
  if (lambda < 0.0)
    throw std::invalid_argument("regression scenario: lambda must be nonnegative");
  if (rho < 0.0) throw std::invalid_argument("regression scenario: rho must be nonnegative");
  if (!(r_norm > 0.0))
    throw std::invalid_argument("regression scenario: r_norm must be positive");
  if (!(psd_margin > 0.0))
    throw std::invalid_argument("regression scenario: psd_margin must be positive");
  // The minimizer chord per step is rho, so the direction chord is
  // rho*(sigma_x2+lambda); it must fit on the circle of radius r_norm.
  if (rho * (sigma_x2 + lambda) > 2.0 * r_norm)
    throw std::invalid_argument("regression scenario: rho too large for r_norm");
}

RegressionScenario::RegressionScenario(const RegressionScenarioConfig& cfg) : cfg_(cfg) {
  cfg_.validate();
  sigma_y2_ = cfg_.r_norm * cfg_.r_norm / cfg_.sigma_x2 + cfg_.psd_margin;
  noise_sd_ = std::sqrt(cfg_.psd_margin);
  step_angle_ =
      2.0 * std::asin(cfg_.rho * (cfg_.sigma_x2 + cfg_.lambda) / (2.0 * cfg_.r_norm));
}

double RegressionScenario::angle_of_step(long n) const {
  if (!cfg_.uniform_drift) return static_cast<double>(n - 1) * step_angle_;
  // Per-step angle scaled by an independent Unif[0,1] draw keyed by the
  // step alone, so every run sees the same path.
  double a = 0.0;
  for (long i = 2; i <= n; ++i)
    a += step_angle_ * rng_u01(0x5eedULL, Stream::aux, static_cast<std::uint64_t>(i), 0, 0);
  return a;
}

VecD RegressionScenario::r_of_step(long n) const {
  VecD r(static_cast<std::size_t>(cfg_.d), 0.0);
  const double a = angle_of_step(n);
  r[0] = cfg_.r_norm * std::cos(a);
  r[1] = cfg_.r_norm * std::sin(a);
  return r;
}

void RegressionScenario::draw_one(std::uint64_t seed, Stream stream, long n, long k,
                                  SampleBatch& out) const {
  const std::size_t d = static_cast<std::size_t>(cfg_.d);
  VecD g(d + 1);
  rng_normals(seed, stream, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(k), 0,
              g);
  const VecD r = r_of_step(n);
  const double sx = std::sqrt(cfg_.sigma_x2);
  VecD x(d);
  for (std::size_t i = 0; i < d; ++i) x[i] = sx * g[i];
  const double y = dot(r, x) / cfg_.sigma_x2 + noise_sd_ * g[d];
  out.push_back(x, y);
}

void RegressionScenario::fill_train(std::uint64_t seed, long n, long k0, long count,
                                    SampleBatch& out) const {
  for (long k = k0; k < k0 + count; ++k) draw_one(seed, Stream::train, n, k, out);
}

void RegressionScenario::fill_test(std::uint64_t seed, long n, long count,
                                   SampleBatch& out) const {
  for (long k = 0; k < count; ++k) draw_one(seed, Stream::test, n, k, out);
}

std::optional<VecD> RegressionScenario::exact_minimizer(long n) const {
  return quadratic_exact_minimizer(r_of_step(n), cfg_.sigma_x2, cfg_.lambda);
}

std::optional<double> RegressionScenario::exact_excess(long n, const VecD& w) const {
  return quadratic_exact_excess(w, r_of_step(n), cfg_.sigma_x2, sigma_y2_, cfg_.lambda);
}

void ClassificationScenarioConfig::validate() const {
  if (d < 2) throw std::invalid_argument("classification scenario: d must be >= 2");
  if (!(noise_var > 0.0))
    throw std::invalid_argument("classification scenario: noise_var must be positive");
  if (!(prior_pos > 0.0 && prior_pos < 1.0))
    throw std::invalid_argument("classification scenario: prior_pos must lie in (0,1)");
  if (theta < 0.0)
    throw std::invalid_argument("classification scenario: theta must be nonnegative");
}

ClassificationScenario::ClassificationScenario(const ClassificationScenarioConfig& cfg)
    : cfg_(cfg) {
  cfg_.validate();
}

VecD ClassificationScenario::mu_of_step(long n) const {
  VecD mu(static_cast<std::size_t>(cfg_.d), 0.0);
  const double a = static_cast<double>(n - 1) * cfg_.theta;
  mu[0] = std::cos(a);
  mu[1] = std::sin(a);
  return mu;
}

void ClassificationScenario::draw_one(std::uint64_t seed, Stream stream, long n, long k,
                                      SampleBatch& out) const {
  const std::size_t d = static_cast<std::size_t>(cfg_.d);
  const double u = rng_u01(seed, stream, static_cast<std::uint64_t>(n),
                           static_cast<std::uint64_t>(k), 0);
  const double y = u < cfg_.prior_pos ? 1.0 : -1.0;
  VecD g(d);
  rng_normals(seed, stream, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(k), 1,
              g);
  const VecD mu = mu_of_step(n);
  const double sd = std::sqrt(cfg_.noise_var);
  VecD x(d);
  for (std::size_t i = 0; i < d; ++i) x[i] = y * mu[i] + sd * g[i];
  out.push_back(x, y);
}

void ClassificationScenario::fill_train(std::uint64_t seed, long n, long k0, long count,
                                        SampleBatch& out) const {
  for (long k = k0; k < k0 + count; ++k) draw_one(seed, Stream::train, n, k, out);
}

void ClassificationScenario::fill_test(std::uint64_t seed, long n, long count,
                                       SampleBatch& out) const {
  for (long k = 0; k < count; ++k) draw_one(seed, Stream::test, n, k, out);
}

CsvScenario::CsvScenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("csv scenario: cannot open " + path);

  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("csv scenario: empty file " + path);
  {
    std::stringstream hs(line);
    std::string col;
    std::vector<std::string> cols;
    while (std::getline(hs, col, ',')) cols.push_back(col);
    if (cols.size() < 3 || cols[0] != "step" || cols[1] != "y")
      throw std::runtime_error("csv scenario: header must be step,y,x1..xd");
    d_ = static_cast<int>(cols.size()) - 2;
    for (int i = 0; i < d_; ++i)
      if (cols[static_cast<std::size_t>(i) + 2] != "x" + std::to_string(i + 1))
        throw std::runtime_error("csv scenario: feature columns must be x1..xd in order");
  }

  long lineno = 1;
  bool all_labels = true;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::stringstream ls(line);
    std::string cell;
    std::vector<double> vals;
    while (std::getline(ls, cell, ',')) {
      try {
        std::size_t used = 0;
        vals.push_back(std::stod(cell, &used));
        if (used != cell.size()) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw std::runtime_error("csv scenario: non-numeric cell '" + cell + "' at line " +
                                 std::to_string(lineno));
      }
    }
    if (static_cast<int>(vals.size()) != d_ + 2)
      throw std::runtime_error("csv scenario: wrong column count at line " +
                               std::to_string(lineno));
    const double step_val = vals[0];
    const long step = static_cast<long>(step_val);
    if (step_val != static_cast<double>(step) || step < 1)
      throw std::runtime_error("csv scenario: invalid step index at line " +
                               std::to_string(lineno));
    while (static_cast<long>(pools_.size()) < step) pools_.emplace_back(d_);
    const double y = vals[1];
    if (y != 1.0 && y != -1.0) all_labels = false;
    pools_[static_cast<std::size_t>(step - 1)].push_back(
        std::span<const double>(vals.data() + 2, static_cast<std::size_t>(d_)), y);
  }
  if (pools_.empty()) throw std::runtime_error("csv scenario: no data rows in " + path);
  for (std::size_t i = 0; i < pools_.size(); ++i)
    if (pools_[i].empty())
      throw std::runtime_error("csv scenario: no rows for step " + std::to_string(i + 1));
  classification_ = all_labels;
}

long CsvScenario::pool_size(long n) const {
  if (n < 1 || n > steps())
    throw std::out_of_range("csv scenario: step " + std::to_string(n) + " out of range");
  return static_cast<long>(pools_[static_cast<std::size_t>(n - 1)].size());
}

void CsvScenario::fill_train(std::uint64_t seed, long n, long k0, long count,
                             SampleBatch& out) const {
  const long size = pool_size(n);
  if (k0 + count > size)
    throw std::runtime_error("csv scenario: step " + std::to_string(n) + " pool has " +
                             std::to_string(size) + " rows, cannot draw K=" +
                             std::to_string(k0 + count) + " without replacement");
  const auto perm = keyed_permutation(seed, n, size);
  const SampleBatch& pool = pools_[static_cast<std::size_t>(n - 1)];
  for (long k = k0; k < k0 + count; ++k) {
    const long idx = perm[static_cast<std::size_t>(k)];
    out.push_back(pool.x(static_cast<std::size_t>(idx)), pool.y(static_cast<std::size_t>(idx)));
  }
}

void CsvScenario::fill_test(std::uint64_t seed, long n, long count, SampleBatch& out) const {
  const long size = pool_size(n);
  const SampleBatch& pool = pools_[static_cast<std::size_t>(n - 1)];
  for (long k = 0; k < count; ++k) {
    const std::uint64_t r = rng_u64(seed, Stream::test, static_cast<std::uint64_t>(n),
                                    static_cast<std::uint64_t>(k), 0);
    const std::size_t idx = static_cast<std::size_t>(r % static_cast<std::uint64_t>(size));
    out.push_back(pool.x(idx), pool.y(idx));
  }
}

} // namespace driftk
