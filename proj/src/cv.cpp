#include "driftk/cv.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "driftk/kernels.hpp"
#include "driftk/rng.hpp"

namespace driftk {

void CvConfig::validate() const {
  if (lambdas.empty()) throw std::invalid_argument("cv: lambda grid must be nonempty");
  for (double l : lambdas)
    if (l < 0.0) throw std::invalid_argument("cv: lambdas must be nonnegative");
  if (folds < 2) throw std::invalid_argument("cv: folds must be >= 2");
}

BoundModel track_bound_model(const BoundModel& base, double base_lambda, double lambda) {
  // Ridge shifts every Hessian eigenvalue by exactly the weight difference.
  BoundModel bm = base;
  const double shift = lambda - base_lambda;
  bm.constants.m = base.constants.m + shift;
  bm.constants.M = base.constants.M + shift;
  if (!(bm.constants.m > 0.0))
    throw std::invalid_argument("cv: lambda grid drives m nonpositive");
  const double scale = base.constants.m / bm.constants.m;
  bm.c_alpha = base.c_alpha * scale;
  bm.c_beta = base.c_beta * scale;
  return bm;
}

namespace {

// Fold assignment: a keyed permutation split into `folds` contiguous
// chunks, so every sample lands in exactly one held-out piece.
std::vector<int> fold_assignment(std::uint64_t seed, long n, long k, int folds) {
  std::vector<long> perm(static_cast<std::size_t>(k));
  for (long i = 0; i < k; ++i) perm[static_cast<std::size_t>(i)] = i;
  for (long i = k - 1; i > 0; --i) {
    const std::uint64_t r = rng_u64(seed, Stream::fold, static_cast<std::uint64_t>(n),
                                    static_cast<std::uint64_t>(i), 0);
    const long j = static_cast<long>(r % static_cast<std::uint64_t>(i + 1));
    std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
  }
  std::vector<int> fold(static_cast<std::size_t>(k));
  for (long pos = 0; pos < k; ++pos) {
    const long f = pos * folds / k;
    fold[static_cast<std::size_t>(perm[static_cast<std::size_t>(pos)])] =
        static_cast<int>(f);
  }
  return fold;
}

} // namespace

CvStepResult cv_step(std::vector<CvTrack>& tracks, const Scenario& scenario,
                     PolicyKind kind, double eps, const DriftConfig& drift,
                     const SgdConfig& sgd, const CvConfig& cv, double radius, long n,
                     std::uint64_t seed) {
  if (tracks.empty()) throw std::invalid_argument("cv_step: no tracks");
  const double diam = 2.0 * radius;

  CvStepResult res;

  // Every track proposes a count from its own state; the shared batch must
  // satisfy all of them, so take the maximum.
  long k_n = 0;
  std::vector<AdaptiveDecision> decisions(tracks.size());
  for (std::size_t i = 0; i < tracks.size(); ++i) {
    CvTrack& tr = tracks[i];
    double rho = 0.0;
    if (tr.estimator.has_estimate() && n >= 3) {
      rho = tr.estimator.rho_hat() + slack(n - 1, drift.c_t);
      if (drift.use_dn) rho += tr.estimator.correction(n - 1);
    }
    decisions[i] = decide_adaptive(kind, n, tr.bm, eps, tr.k_init, rho, diam, tr.k_history);
    k_n = std::max(k_n, decisions[i].k);
  }
  res.k_n = k_n;

  SampleBatch batch(scenario.dim());
  scenario.fill_train(seed, n, 0, k_n, batch);

  // Held-out scoring with the lambda=0 loss; fewer samples than folds falls
  // back to leave-one-out.
  int folds = cv.folds;
  if (k_n < folds) {
    folds = static_cast<int>(k_n);
    res.loo_fallback = true;
  }
  res.scores.assign(tracks.size(), 0.0);
  if (folds >= 2) {
    const std::vector<int> fold = fold_assignment(seed, n, k_n, folds);
    const auto scorer = tracks.front().loss->with_lambda(0.0);
    SampleBatch train(scenario.dim()), held(scenario.dim());
    for (std::size_t i = 0; i < tracks.size(); ++i) {
      double score = 0.0;
      for (int f = 0; f < folds; ++f) {
        train.clear();
        held.clear();
        for (std::size_t s = 0; s < batch.size(); ++s)
          (fold[s] == f ? held : train).push_back(batch.x(s), batch.y(s));
        const VecD wf = sgd_pass(tracks[i].w, train, *tracks[i].loss, sgd, radius);
        score += mean_loss(*scorer, wf, held, Exec::serial);
      }
      res.scores[i] = score / static_cast<double>(folds);
    }
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < tracks.size(); ++i)
      if (res.scores[i] < best) { // ties keep the smallest index
        best = res.scores[i];
        res.selected = static_cast<int>(i);
      }
  } else {
    // Not enough samples to score; keep the first track.
    res.selected = 0;
  }

  // All tracks retrain on the full batch and stay live. The certified bound
  // is each track's own d0 evaluated at the shared count, which is at least
  // its proposal, so the per-track target still holds.
  VecD gbar;
  for (std::size_t i = 0; i < tracks.size(); ++i) {
    CvTrack& tr = tracks[i];
    tr.w = sgd_pass(tr.w, batch, *tr.loss, sgd, radius);
    double grad_norm = 0.0;
    if (k_n > 0) {
      mean_gradient(*tr.loss, tr.w, batch, gbar, Exec::serial);
      grad_norm = norm(gbar);
    }
    tr.estimator.observe(n, k_n, tr.w, grad_norm);
    tr.k_history.push_back(k_n);
    tr.eps_hat = bound_eval(tr.bm, decisions[i].d0, static_cast<double>(k_n));
    tr.saturated = decisions[i].saturated;
  }

  return res;
}

} // namespace driftk
