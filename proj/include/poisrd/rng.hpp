#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace poisrd {

/// Seed used by every entry point when the caller does not pass one.
inline constexpr std::uint64_t kDefaultSeed = 20211017;

/// splitmix64 finalizer; decorrelates nearby seeds.
constexpr std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Per-worker stream seed: mix(seed XOR worker). Results are reproducible for a
/// fixed worker count; changing the count changes the partition of samples.
constexpr std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t worker) {
  return mix_seed(seed ^ worker);
}

/// mt19937_64 with portable transforms. The standard distribution objects are
/// implementation-defined, so uniforms and exponentials are derived here to
/// keep outputs identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(mix_seed(seed)) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on (0, 1).
  double uniform_open() {
    double u;
    do {
      u = uniform();
    } while (u == 0.0);
    return u;
  }

  /// Exponential with the given rate, by inversion.
  double exponential(double rate) { return -std::log(uniform_open()) / rate; }

  bool fair_coin() { return (engine_() >> 63) != 0; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace poisrd
