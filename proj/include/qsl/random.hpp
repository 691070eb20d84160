// Copyright 2026 The qsl-sim Authors
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

#ifndef QSL_RANDOM_HPP
#define QSL_RANDOM_HPP

#include <bit>
#include <cstdint>
#include <random>
#include <stdexcept>

namespace qsl {

/// All stochastic code draws from this engine. Its output sequence is fixed by
/// the standard, and the helpers below avoid the implementation-defined
/// distributions so results are bit-identical across standard libraries.
using Rng = std::mt19937_64;

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Derives the seed of stream `index` from a master seed.
constexpr std::uint64_t split_seed(std::uint64_t master, std::uint64_t index) {
    return mix64(mix64(master) ^ mix64(index + 0x632BE59BD9B4E019ULL));
}

inline Rng make_rng(std::uint64_t master, std::uint64_t index) {
    return Rng(split_seed(master, index));
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(Rng &rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline bool bernoulli(Rng &rng, double p) {
    return uniform01(rng) < p;
}

/// Uniform integer in [0, n) by rejection (no modulo bias).
inline std::uint64_t uniform_index(Rng &rng, std::uint64_t n) {
    if (n == 0) {
        throw std::invalid_argument("uniform_index: empty range");
    }
    if (std::has_single_bit(n)) {
        return rng() & (n - 1);
    }
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    while (true) {
        std::uint64_t v = rng();
        if (v < limit) {
            return v % n;
        }
    }
}

}  // namespace qsl

#endif
