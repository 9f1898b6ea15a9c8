//  Copyright 2026 The kglight Authors. All Rights Reserved.
//
//  Licensed under the Apache License, Version 2.0 (the "License");
//  you may not use this file except in compliance with the License.
//  You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
//  Unless required by applicable law or agreed to in writing, software
//  distributed under the License is distributed on an "AS IS" BASIS,
//  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//  See the License for the specific language governing permissions and
//  limitations under the License.

#pragma once

#include <cstdint>
#include <limits>

namespace kglight {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// The <random> distributions are implementation-defined, so everything that
// must be reproducible across platforms draws through the helpers below.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed = 0) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

/// Independent stream for (seed, a, b), e.g. (master seed, entity, walk index).
inline Rng derive_rng(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ splitmix64(a + 0x632BE59BD9B4E019ULL));
  h = splitmix64(h ^ splitmix64(b + 0x8CB92BA72F3D8DD7ULL));
  return Rng(h);
}

/// Uniform integer in [0, bound) by rejection; bound must be > 0.
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t bound) {
  const std::uint64_t limit = Rng::max() - (Rng::max() % bound);
  std::uint64_t x = rng();
  while (x >= limit) x = rng();
  return x % bound;
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform_unit(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace kglight
