// Copyright 2026 The crowdsense Authors
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

// Seeded random streams with output that is identical on every platform.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the C++
// standard. The standard distributions are implementation-defined, so bounded
// integers and unit reals are derived here from raw engine output. Each
// consumer (trace synthesis, bootstrap, selection) draws from its own stream,
// keyed by SplitMix64 of (seed, stream tag), so turning one consumer off does
// not shift the numbers another one sees.

#ifndef CROWDSENSE_CORE_RNG_HPP_
#define CROWDSENSE_CORE_RNG_HPP_

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace crowdsense {

enum class RngStream : std::uint64_t {
  kIngest = 0x696e67657374ULL,
  kBootstrap = 0x626f6f74ULL,
  kSelection = 0x73656c656374ULL,
};

constexpr std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static Rng ForStream(std::uint64_t seed, RngStream stream) {
    return Rng(SplitMix64(seed ^ SplitMix64(static_cast<std::uint64_t>(stream))));
  }

  std::uint64_t Next() { return engine_(); }

  // Uniform in [0, bound) by rejection; bound must be positive.
  std::uint64_t UniformIndex(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x = engine_();
    while (x >= limit) x = engine_();
    return x % bound;
  }

  // Uniform in [0, 1) with 53 bits of precision.
  double UniformReal() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool Bernoulli(double p) { return UniformReal() < p; }

  // Removes and returns a uniformly chosen element, preserving the order of
  // the remaining ones.
  template <typename T>
  T TakeOne(std::vector<T>& pool) {
    const auto idx = static_cast<std::ptrdiff_t>(UniformIndex(pool.size()));
    T out = std::move(pool[idx]);
    pool.erase(pool.begin() + idx);
    return out;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace crowdsense

#endif  // CROWDSENSE_CORE_RNG_HPP_
