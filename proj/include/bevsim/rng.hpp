// Copyright 2026 The bevsim Authors
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

#ifndef BEVSIM__RNG_HPP_
#define BEVSIM__RNG_HPP_

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace bevsim
{

/// Seeded mt19937_64 with integer and real draws defined here, not by the standard library.
class Rng
{
public:
  explicit Rng(std::uint64_t seed)
  : engine_(seed) {}

  std::uint64_t next() {return engine_();}

  /// Uniform integer in [lo, hi] by rejection sampling.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi)
  {
    auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) {
      return lo + static_cast<std::int64_t>(next());
    }
    std::uint64_t excess = (UINT64_MAX % span + 1) % span;
    std::uint64_t v = next();
    while (excess != 0 && v > UINT64_MAX - excess) {
      v = next();
    }
    return lo + static_cast<std::int64_t>(v % span);
  }

  /// Uniform real in [0, 1) with 53 bits of precision.
  double uniform01() {return static_cast<double>(next() >> 11) * 0x1.0p-53;}

  template<typename T>
  void shuffle(std::span<T> items)
  {
    for (std::size_t i = items.size(); i > 1; --i) {
      auto j = static_cast<std::size_t>(uniform_int(0, static_cast<std::int64_t>(i) - 1));
      std::swap(items[i - 1], items[j]);
    }
  }

private:
  std::mt19937_64 engine_;
};

/// SplitMix64 finalizer; derives independent sub-seeds from (seed, stream).
constexpr std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream)
{
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace bevsim

#endif  // BEVSIM__RNG_HPP_
