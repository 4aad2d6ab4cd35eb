#pragma once

// Counter-based random numbers. Every draw is a pure function of
// (seed, stream, step, sample, slot), so any value can be regenerated in
// isolation and results do not depend on evaluation order or thread count.

#include <cmath>
#include <cstdint>
#include <span>

namespace driftk {

// Logical stream ids. Training and evaluation draws must never share a
// stream, otherwise test sets leak into the fitted iterates.
enum class Stream : std::uint32_t {
  train = 1,
  test = 2,
  shuffle = 3,
  fold = 4,
  mc = 5,
  aux = 6,
};

namespace detail {

struct U128 {
  std::uint64_t lo;
  std::uint64_t hi;
};

inline U128 mul_wide(std::uint64_t a, std::uint64_t b) {
  unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
  return {static_cast<std::uint64_t>(p), static_cast<std::uint64_t>(p >> 64)};
}

} // namespace detail

// Philox-2x64 with 10 rounds. Returns two independent 64-bit words for the
// given key/counter pair.
inline detail::U128 philox2x64(std::uint64_t key, std::uint64_t c0, std::uint64_t c1) {
  constexpr std::uint64_t kMul = 0xD2B74407B1CE6E93ULL;
  constexpr std::uint64_t kWeyl = 0x9E3779B97F4A7C15ULL;
  for (int round = 0; round < 10; ++round) {
    auto p = detail::mul_wide(c0, kMul);
    c0 = p.hi ^ key ^ c1;
    c1 = p.lo;
    key += kWeyl;
  }
  return {c1, c0};
}

inline std::uint64_t rng_u64(std::uint64_t seed, Stream stream, std::uint64_t n,
                             std::uint64_t k, std::uint32_t slot) {
  const std::uint64_t c0 = (n << 32) ^ k;
  const std::uint64_t c1 =
      (static_cast<std::uint64_t>(static_cast<std::uint32_t>(stream)) << 32) | slot;
  return philox2x64(seed, c0, c1).lo;
}

// Uniform on [0,1) with 53 random mantissa bits.
inline double rng_u01(std::uint64_t seed, Stream stream, std::uint64_t n,
                      std::uint64_t k, std::uint32_t slot) {
  return static_cast<double>(rng_u64(seed, stream, n, k, slot) >> 11) * 0x1.0p-53;
}

// Standard normal pair via Box-Muller from one counter. Deterministic given
// the key, unlike ziggurat-style rejection samplers.
inline void rng_normal_pair(std::uint64_t seed, Stream stream, std::uint64_t n,
                            std::uint64_t k, std::uint32_t slot, double& z0, double& z1) {
  const std::uint64_t c0 = (n << 32) ^ k;
  const std::uint64_t c1 =
      (static_cast<std::uint64_t>(static_cast<std::uint32_t>(stream)) << 32) | slot;
  const auto words = philox2x64(seed, c0, c1);
  // u1 in (0,1] so the log is finite; u2 in [0,1).
  const double u1 = (static_cast<double>(words.lo >> 11) + 1.0) * 0x1.0p-53;
  const double u2 = static_cast<double>(words.hi >> 11) * 0x1.0p-53;
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 6.283185307179586476925286766559 * u2;
  z0 = r * std::cos(a);
  z1 = r * std::sin(a);
}

// Fills out with standard normals, consuming slots slot0, slot0+1, ...
inline void rng_normals(std::uint64_t seed, Stream stream, std::uint64_t n,
                        std::uint64_t k, std::uint32_t slot0, std::span<double> out) {
  std::size_t i = 0;
  std::uint32_t slot = slot0;
  while (i + 1 < out.size()) {
    rng_normal_pair(seed, stream, n, k, slot++, out[i], out[i + 1]);
    i += 2;
  }
  if (i < out.size()) {
    double z0 = 0.0, z1 = 0.0;
    rng_normal_pair(seed, stream, n, k, slot, z0, z1);
    out[i] = z0;
  }
}

} // namespace driftk
