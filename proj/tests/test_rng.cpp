#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "driftk/rng.hpp"
#include "driftk/vec.hpp"

using namespace driftk;

TEST_CASE("draws are pure functions of the key") {
  const std::uint64_t a = rng_u64(42, Stream::train, 7, 19, 3);
  const std::uint64_t b = rng_u64(42, Stream::train, 7, 19, 3);
  CHECK(a == b);

  double z0a, z1a, z0b, z1b;
  rng_normal_pair(42, Stream::train, 7, 19, 3, z0a, z1a);
  rng_normal_pair(42, Stream::train, 7, 19, 3, z0b, z1b);
  CHECK(z0a == z0b); // bitwise: same key, same value
  CHECK(z1a == z1b);
}

TEST_CASE("any key coordinate change gives a different draw") {
  const std::uint64_t base = rng_u64(42, Stream::train, 7, 19, 3);
  CHECK(base != rng_u64(43, Stream::train, 7, 19, 3));
  CHECK(base != rng_u64(42, Stream::test, 7, 19, 3));
  CHECK(base != rng_u64(42, Stream::train, 8, 19, 3));
  CHECK(base != rng_u64(42, Stream::train, 7, 20, 3));
  CHECK(base != rng_u64(42, Stream::train, 7, 19, 4));
}

TEST_CASE("uniforms live in [0,1)") {
  for (int i = 0; i < 10000; ++i) {
    const double u = rng_u01(7, Stream::aux, 1, static_cast<std::uint64_t>(i), 0);
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("normals have roughly standard moments") {
  const long n = 200000;
  double sum = 0.0, sumsq = 0.0;
  VecD z(2);
  for (long i = 0; i < n; i += 2) {
    rng_normal_pair(11, Stream::mc, 1, static_cast<std::uint64_t>(i), 0, z[0], z[1]);
    sum += z[0] + z[1];
    sumsq += z[0] * z[0] + z[1] * z[1];
    CHECK(std::isfinite(z[0]));
    CHECK(std::isfinite(z[1]));
  }
  const double mean = sum / static_cast<double>(n);
  const double var = sumsq / static_cast<double>(n) - mean * mean;
  CHECK(std::abs(mean) < 0.01);       // SE ~ 0.0022
  CHECK(std::abs(var - 1.0) < 0.02);  // SE ~ 0.0032
}

TEST_CASE("odd-length fills consume slots deterministically") {
  VecD a(5), b(7);
  rng_normals(3, Stream::train, 2, 4, 0, a);
  rng_normals(3, Stream::train, 2, 4, 0, b);
  for (std::size_t i = 0; i < a.size(); ++i)
    CHECK(a[i] == b[i]); // shared prefix consumes the same slots
}

TEST_CASE("projection onto the domain ball") {
  VecD w{0.0, 0.0};
  project_to_ball(w, 1.0);
  CHECK(w[0] == doctest::Approx(0.0));
  CHECK(w[1] == doctest::Approx(0.0));

  w = {3.0, 4.0};
  project_to_ball(w, 1.0);
  CHECK(w[0] == doctest::Approx(0.6));
  CHECK(w[1] == doctest::Approx(0.8));

  w = {0.3, -0.4};
  project_to_ball(w, 1.0);
  CHECK(w[0] == doctest::Approx(0.3));
  CHECK(w[1] == doctest::Approx(-0.4));
}

TEST_CASE("projection is idempotent") {
  for (int i = 0; i < 100; ++i) {
    VecD w(3);
    rng_normals(99, Stream::aux, 5, static_cast<std::uint64_t>(i), 0, w);
    for (double& v : w) v *= 4.0;
    project_to_ball(w, 2.0);
    CHECK(norm(w) <= 2.0 + 1e-12);
    VecD again = w;
    project_to_ball(again, 2.0);
    CHECK(distance(w, again) == doctest::Approx(0.0));
  }
}

TEST_CASE("projection rejects bad input") {
  VecD w{1.0, std::nan("")};
  CHECK_THROWS_AS(project_to_ball(w, 1.0), std::invalid_argument);
  VecD ok{1.0, 0.0};
  CHECK_THROWS_AS(project_to_ball(ok, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(project_to_ball(ok, -1.0), std::invalid_argument);
}

TEST_CASE("vector helpers") {
  VecD a{1.0, 2.0, 2.0};
  CHECK(norm(a) == doctest::Approx(3.0));
  VecD b{1.0, 0.0, 0.0};
  CHECK(dot(a, b) == doctest::Approx(1.0));
  CHECK(distance(a, b) == doctest::Approx(std::sqrt(8.0)));
  CHECK(all_finite(a));
  a[1] = std::numeric_limits<double>::infinity();
  CHECK(!all_finite(a));
}
