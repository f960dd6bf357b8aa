// Copyright 2026 The ldp-trilemma Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TRILEMMA_RNG_HPP_
#define TRILEMMA_RNG_HPP_

#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace trilemma {

// SplitMix64 finalizer. Used both as the core generator step and as a key
// derivation mix, so every stream in the project comes from one portable,
// fully specified family (no reliance on implementation-defined std
// distributions).
inline constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

// Derives an independent stream key from a root seed and up to two stream
// identifiers (e.g. a purpose tag and a client id). Deterministic.
inline constexpr std::uint64_t derive_key(std::uint64_t seed, std::uint64_t a,
                                          std::uint64_t b = 0) {
  std::uint64_t h = mix64(seed + kGoldenGamma);
  h = mix64(h ^ (a + kGoldenGamma));
  h = mix64(h ^ (b + kGoldenGamma));
  return h;
}

// Counter-based uniform generator (SplitMix64). Streams keyed by different
// seeds are independent for practical purposes; a stream's output sequence
// depends only on its seed, never on global state or thread scheduling.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += kGoldenGamma;
    return mix64(state_);
  }

  // Uniform in [0, n). Masked rejection keeps the draw exactly uniform.
  std::uint64_t next_below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("Rng::next_below: n must be > 0");
    if (n == 1) return 0;
    const int bits = std::bit_width(n - 1);
    while (true) {
      const std::uint64_t r = next_u64() >> (64 - bits);
      if (r < n) return r;
    }
  }

  // Uniform double in [0, 1), 53 bits of precision.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  bool bernoulli(double p) { return next_double() < p; }

  // Standard normal via Box-Muller; the second variate of each pair is
  // cached.
  double next_normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    // u1 in (0, 1] so the log is finite.
    const double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    const double u2 = next_double();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * 3.14159265358979323846 * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace trilemma

#endif  // TRILEMMA_RNG_HPP_
