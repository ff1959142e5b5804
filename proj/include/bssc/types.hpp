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

#include <complex>
#include <span>
#include <vector>

namespace bssc {

using cd = std::complex<double>;
using CVec = std::vector<cd>;

/// i^k for any integer k, exact.
inline cd i_pow(int k) {
    switch (((k % 4) + 4) % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

/// Multiplies z by i^k without rounding.
inline cd rotate_quarter(cd z, int k) {
    switch (((k % 4) + 4) % 4) {
        case 0: return z;
        case 1: return {-z.imag(), z.real()};
        case 2: return {-z.real(), -z.imag()};
        default: return {z.imag(), -z.real()};
    }
}

/// <x, y> = sum conj(x_i) y_i
inline cd inner(std::span<const cd> x, std::span<const cd> y) {
    cd acc{};
    for (std::size_t i = 0; i < x.size(); ++i) acc += std::conj(x[i]) * y[i];
    return acc;
}

inline double norm2(std::span<const cd> x) {
    double acc = 0.0;
    for (const cd& z : x) acc += std::norm(z);
    return acc;
}

}  // namespace bssc
