#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

#include "risamp/common.hpp"

namespace risamp {

/// SplitMix64 finalizer; used to derive independent stream seeds from a
/// master seed without correlated low bits.
inline std::uint64_t split_mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed for one named substream of one Monte-Carlo trial. Depends only on
/// (master, trial, stream), so e.g. the channel substream of trial k is the
/// same no matter which sweep point the trial runs under.
inline std::uint64_t substream_seed(std::uint64_t master, int trial, int stream) {
  std::uint64_t x = split_mix64(master ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(trial + 1)));
  return split_mix64(x ^ (0xd1b54a32d192ed03ULL * static_cast<std::uint64_t>(stream + 1)));
}

/// Deterministic random stream. Uniform and Gaussian draws are built from
/// raw mt19937_64 output (Box-Muller for Gaussians), so sequences do not
/// depend on the standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  /// Uniform on [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  /// Uniform on (0, 1].
  double uniform_open0() { return 1.0 - uniform(); }

  /// Standard normal N(0, 1).
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double r = std::sqrt(-2.0 * std::log(uniform_open0()));
    const double t = 2.0 * kPi * uniform();
    spare_ = r * std::sin(t);
    have_spare_ = true;
    return r * std::cos(t);
  }

  /// Circularly symmetric complex normal CN(0, 1); E|z|^2 = 1.
  Complex complex_gaussian() {
    const double r = std::sqrt(-std::log(uniform_open0()));
    const double t = 2.0 * kPi * uniform();
    return {r * std::cos(t), r * std::sin(t)};
  }

 private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace risamp
