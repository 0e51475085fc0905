/*
   Copyright 2026 The mcnie2 authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <cstdint>
#include <random>

namespace mcnie2 {

/// Deterministic random source: a seeded 64-bit stream (mt19937_64, whose
/// output sequence is pinned by the C++ standard). The same seed always
/// yields the same draws, which is what the known-answer tests and the
/// --seed CLI contract rely on. NOT cryptographically secure; research use
/// only.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    /// Seed from system entropy.
    static Rng from_entropy() {
        std::random_device rd;
        std::uint64_t seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
        return Rng(seed);
    }

    /// Derive an independent stream for a sub-task (e.g. one file block).
    /// splitmix64-style mixing so nearby (seed, index) pairs decorrelate.
    static Rng derive(std::uint64_t seed, std::uint64_t index) {
        std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return Rng(z ^ (z >> 31));
    }

    std::uint64_t u64() { return gen_(); }

    /// Uniform value with the given number of low bits (1..64).
    std::uint64_t bits(unsigned nbits) {
        std::uint64_t v = gen_();
        return nbits >= 64 ? v : (v & ((std::uint64_t{1} << nbits) - 1));
    }

    bool bit() { return (gen_() >> 32) & 1; }

    /// Uniform index in [0, bound), bound >= 1. Unbiased via rejection.
    std::size_t index(std::size_t bound) {
        std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t v;
        do {
            v = gen_();
        } while (v >= limit);
        return static_cast<std::size_t>(v % bound);
    }

  private:
    std::mt19937_64 gen_;
};

}  // namespace mcnie2
