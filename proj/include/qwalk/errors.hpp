// Copyright 2026 The qwalk Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace qwalk {

// Base class for all qwalk errors so callers can catch the whole family.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Amplitude written or truncated outside a state's allocated window.
struct WindowOverflow : Error {
    using Error::Error;
};

// Matrix handed to euler_decompose is not unitary within tolerance.
struct NonUnitaryInput : Error {
    using Error::Error;
};

// Initial-state amplitudes do not satisfy |alpha|^2 + |beta|^2 = 1.
struct NotNormalized : Error {
    using Error::Error;
};

// Series truncation order is useless for the requested rate.
struct TruncationInvalid : Error {
    using Error::Error;
};

// Brute-force enumeration request exceeds the supported tuple budget.
struct ComplexityGuard : Error {
    using Error::Error;
};

// Poisson rate (or tilt exponent) outside the supported range.
struct RateOutOfRange : Error {
    using Error::Error;
};

// Power-series propagator cannot reach the target tolerance.
struct NonConvergence : Error {
    using Error::Error;
};

// Input to a distribution comparison is not a probability distribution.
struct NotADistribution : Error {
    using Error::Error;
};

// Invalid experiment configuration (CLI maps this to exit code 2).
struct ConfigError : Error {
    using Error::Error;
};

// Failed to read or write an artifact file (CLI maps this to exit code 4).
struct IoError : Error {
    using Error::Error;
};

}  // namespace qwalk
