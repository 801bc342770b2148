#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "normaloid/matrix.hpp"

namespace normaloid {

/// Name recorded in results files so counterexamples can be replayed by other
/// implementations: 64-bit Mersenne Twister (std::mt19937_64, whose output
/// sequence is fixed by the C++ standard), uniforms from the top 53 bits,
/// normals by the polar-free Box-Muller transform.
inline constexpr std::string_view kGeneratorName = "mt19937_64/box-muller";

/// splitmix64 mixing of (seed, stream, index) into an independent sub-seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index = 0);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [lo, hi].
  int uniform_int(int lo, int hi);

  /// Standard normal via Box-Muller (both outputs are used).
  double normal();

  /// Standard complex normal: real and imaginary parts N(0, 1/2).
  Complex complex_normal();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace normaloid
