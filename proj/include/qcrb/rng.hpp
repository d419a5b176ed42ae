// Copyright 2026 The qcrb authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QCRB_RNG_HPP
#define QCRB_RNG_HPP

#include <cmath>
#include <cstdint>

#include "qcrb/cmat.hpp"
#include "qcrb/rmat.hpp"

namespace qcrb {

// xorshift64* generator: a 64-bit shift-register sequence
//   x ^= x >> 12; x ^= x << 25; x ^= x >> 27; return x * 2685821657736338717
// with independent streams derived from a (seed, stream) pair through the
// splitmix64 finalizer. Bit-identical across platforms, which keeps every
// randomized computation in the library reproducible from a single seed.
class Rng {
 public:
  explicit Rng(uint64_t seed, uint64_t stream = 0) {
    state_ = mix(seed + 0x9E3779B97F4A7C15ULL * (stream + 1));
    if (state_ == 0) state_ = 0x6A09E667F3BCC909ULL;
  }

  static Rng stream(uint64_t seed, uint64_t stream_id) { return Rng(seed, stream_id); }

  uint64_t next_u64() {
    uint64_t x = state_;
    x ^= x >> 12;
    x ^= x << 25;
    x ^= x >> 27;
    state_ = x;
    return x * 2685821657736338717ULL;
  }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  int uniform_int(int n) { return static_cast<int>(next_u64() % static_cast<uint64_t>(n)); }

  // Standard normal via Box-Muller (always consumes two uniforms).
  double normal() {
    double u1 = uniform();
    const double u2 = uniform();
    if (u1 <= 0) u1 = 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
  }

  RVec normal_vec(int n) {
    RVec v(n);
    for (auto& x : v) x = normal();
    return v;
  }

  // Complex standard normal vector; normalizing it gives a Haar-uniform
  // point on the unit sphere of C^d.
  CVec cnormal_vec(int n) {
    CVec v(n);
    for (auto& x : v) x = Complex(normal(), normal());
    return v;
  }

  CVec unit_cvec(int n) { return normalized(cnormal_vec(n)); }

 private:
  static uint64_t mix(uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  uint64_t state_;
};

}  // namespace qcrb

#endif  // QCRB_RNG_HPP
