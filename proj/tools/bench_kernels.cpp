// Compares the blocked mean-gradient/mean-loss kernels in serial and
// parallel execution against the plain reference loops, and checks that the
// blocked results are identical across modes.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "driftk/kernels.hpp"
#include "driftk/loss.hpp"
#include "driftk/rng.hpp"
#include "driftk/samples.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

template <typename F>
double time_best_of(int reps, F&& f) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    auto start = Clock::now();
    f();
    double s = seconds_since(start);
    if (s < best) best = s;
  }
  return best;
}

} // namespace

int main(int argc, char** argv) {
  long rows = 200000;
  int dim = 16;
  int reps = 5;
  if (argc > 1) rows = std::stol(argv[1]);
  if (argc > 2) dim = std::stoi(argv[2]);
  if (argc > 3) reps = std::stoi(argv[3]);

  driftk::SampleBatch batch(dim);
  batch.resize(rows);
  std::vector<double> buf(static_cast<std::size_t>(rows) * (dim + 1));
  driftk::rng_normals(9001, driftk::Stream::aux, 1, 0, 0, buf);
  for (long i = 0; i < rows; ++i) {
    for (int j = 0; j < dim; ++j) {
      batch.xs[static_cast<std::size_t>(i) * dim + j] =
          buf[static_cast<std::size_t>(i) * (dim + 1) + j];
    }
    batch.ys[i] = buf[static_cast<std::size_t>(i) * (dim + 1) + dim];
  }

  driftk::QuadraticLoss loss(dim, 0.1);
  driftk::VecD w(dim, 0.25);
  driftk::VecD grad(dim);

  double t_ref = time_best_of(reps, [&] {
    driftk::mean_gradient_ref(loss, w, batch, grad);
  });
  double t_serial = time_best_of(reps, [&] {
    driftk::mean_gradient(loss, w, batch, grad, driftk::Exec::serial);
  });
  double t_parallel = time_best_of(reps, [&] {
    driftk::mean_gradient(loss, w, batch, grad, driftk::Exec::parallel);
  });

  driftk::VecD g_serial(dim), g_parallel(dim);
  driftk::mean_gradient(loss, w, batch, g_serial, driftk::Exec::serial);
  driftk::mean_gradient(loss, w, batch, g_parallel, driftk::Exec::parallel);
  bool identical = g_serial == g_parallel;

  double l_serial = driftk::mean_loss(loss, w, batch, driftk::Exec::serial);
  double l_parallel = driftk::mean_loss(loss, w, batch, driftk::Exec::parallel);

  std::printf("mean_gradient over %ld rows, d=%d (best of %d)\n", rows, dim, reps);
  std::printf("  reference loop : %9.3f ms\n", t_ref * 1e3);
  std::printf("  blocked serial : %9.3f ms\n", t_serial * 1e3);
  std::printf("  blocked openmp : %9.3f ms (speedup vs serial: %.2fx)\n",
              t_parallel * 1e3, t_serial / t_parallel);
  std::printf("  serial == parallel gradients, bitwise: %s\n",
              identical ? "yes" : "NO");
  std::printf("  mean_loss serial=%.17g parallel=%.17g (delta %.3g)\n", l_serial,
              l_parallel, std::fabs(l_serial - l_parallel));
  return identical ? 0 : 1;
}
