// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The veriphrase Authors
//
// Deterministic random source. mt19937_64 output is fully specified by the
// standard; the draw-to-double mappings here avoid std::*_distribution,
// whose algorithms are implementation-defined, so every sequence is
// reproducible bit-for-bit from a seed.

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace veriphrase {

class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1).
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform in (0, 1].
  double uniform_pos() {
    return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
  }

  /// Uniform in (0, 1), both ends excluded.
  double uniform_open() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Standard Gumbel noise.
  double gumbel() { return -std::log(-std::log(uniform_open())); }

  double exponential() { return -std::log(uniform_pos()); }

  /// Index sampled proportionally to non-negative weights.
  size_t categorical(std::span<const double> weights) {
    double total = 0.0;
    for (double w : weights) total += w;
    double u = uniform01() * total;
    for (size_t i = 0; i + 1 < weights.size(); ++i) {
      u -= weights[i];
      if (u < 0.0) return i;
    }
    return weights.empty() ? 0 : weights.size() - 1;
  }

  /// Uniform draw from the 3-simplex (Dirichlet with unit concentration).
  std::array<double, 3> simplex3() {
    double a = exponential(), b = exponential(), c = exponential();
    const double s = a + b + c;
    return {a / s, b / s, c / s};
  }

  /// Fisher-Yates; modulo bias is negligible for our index ranges.
  template <class T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[engine_() % i]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

/// FNV-1a, used both for feature hashing and for deriving per-record seeds.
inline uint64_t fnv1a64(std::string_view s) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace veriphrase
