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

#include <stdexcept>

namespace bssc {

/// Operands with incompatible lengths or shapes.
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Argument outside the mathematical domain of an operation (singular
/// matrix, non-symmetric form, rank out of range, ...).
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

/// The received signal is not consistent with any codeword.
struct DecodeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Invalid experiment or command-line configuration.
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Request exceeds what can be materialized (dense matrices, huge codebooks).
struct ResourceError : std::length_error {
    using std::length_error::length_error;
};

/// Malformed input file or unwritable output.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An internal invariant did not hold.
struct ConsistencyError : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace bssc
