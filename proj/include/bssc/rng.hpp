// Copyright 2026 The BSSC Authors
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

// Counter-based random numbers: every draw is a pure function of
// (key, counter), so a trial's stream is independent of scheduling.

#include <cmath>
#include <cstdint>
#include <numbers>

#include "bssc/types.hpp"

namespace bssc {

inline constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Stream keyed by a seed and any number of sub-keys (trial index, codeword
/// index, ...). Satisfies UniformRandomBitGenerator.
class CounterRng {
   public:
    using result_type = std::uint64_t;

    explicit CounterRng(std::uint64_t seed) : key_(splitmix64(seed)) {}
    CounterRng(std::uint64_t seed, std::uint64_t stream) : key_(splitmix64(splitmix64(seed) ^ splitmix64(~stream))) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return UINT64_MAX; }

    result_type operator()() { return splitmix64(key_ ^ splitmix64(counter_++)); }

    /// Uniform on [0, 1).
    double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n), n > 0, by rejection.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do x = (*this)();
        while (x >= limit);
        return x % n;
    }

    /// Standard normal via Box-Muller (one value per call, two uniforms each).
    double normal() {
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    /// Circularly-symmetric complex Gaussian with E|z|^2 = variance.
    cd complex_normal(double variance = 1.0) {
        const double s = std::sqrt(variance / 2.0);
        const double re = normal();
        const double im = normal();
        return {s * re, s * im};
    }

    std::uint64_t counter() const { return counter_; }

   private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace bssc
