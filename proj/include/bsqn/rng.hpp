// Copyright 2026 The BSQN Authors
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

#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace bsqn {

/// Default generator. Everything that draws randomness is templated on a
/// UniformRandomBitGenerator, so callers may substitute their own.
using Rng = std::mt19937_64;

inline uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

inline uint64_t fnv1a(std::string_view text) {
    uint64_t h = 0xCBF29CE484222325ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001B3ull;
    }
    return h;
}

/// Seed for one (cell, trial) of an experiment. Depends only on the master
/// seed, the cell's coordinate key, and the trial number, so dropping or
/// reordering cells leaves every other stream untouched.
inline uint64_t derive_seed(uint64_t master, std::string_view cell_key, uint64_t trial) {
    uint64_t h = splitmix64(master);
    h = splitmix64(h ^ fnv1a(cell_key));
    return splitmix64(h ^ splitmix64(trial));
}

template <typename URBG>
bool coin(URBG &rng) {
    return std::uniform_int_distribution<int>(0, 1)(rng) != 0;
}

template <typename URBG>
uint64_t random_word(URBG &rng) {
    return std::uniform_int_distribution<uint64_t>()(rng);
}

template <typename URBG>
double uniform01(URBG &rng) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

}  // namespace bsqn
