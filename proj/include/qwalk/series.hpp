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

#include "qwalk/coin.hpp"
#include "qwalk/state.hpp"

namespace qwalk {

// Truncation order for the Poisson jump series. order = 64 keeps the tail
// lambda^{K+1}/(K+1)! * e^lambda below 1e-14 for every rate lambda < 2*pi.
struct SeriesTruncation {
    int order = 64;

    // lambda^{K+1}/(K+1)! * e^lambda, evaluated in log space.
    double tail_bound(double lambda) const;

    // True when the tail bound is below 1e-14.
    bool is_tight_for(double lambda) const;

    // Smallest order whose tail bound is below 1e-14. Throws
    // TruncationInvalid if no order <= 400 suffices.
    static SeriesTruncation tight_for(double lambda);
};

// One walk step with coin e^{i lambda s2}, evaluated as a jump series:
//   out(x, y) = sum_k i^{k + y'(1-(-1)^k)/2} (lambda^k / k!) in(x-y, y'),
//   y' = (-1)^k y.
// Throws TruncationInvalid when the tail bound at (lambda, order) is >= 1.
CoinedState step_sigma2_series(const CoinedState& in, double lambda,
                               const SeriesTruncation& trunc);

// One walk step with coin e^{i lambda s3}:
//   out(x, y) = sum_k i^{k y} (lambda^k / k!) in(x-y, y).
CoinedState step_sigma3_series(const CoinedState& in, double lambda,
                               const SeriesTruncation& trunc);

// One walk step with the full Euler coin, delta applied as a scalar factor:
//   out(x, y) = e^{i delta} sum_k e^{i l1 y} e^{i l3 y'}
//               i^{k + y'(1-(-1)^k)/2} (l2^k / k!) in(x-y, y'),
//   y' = (-1)^k y.
CoinedState step_general_series(const CoinedState& in, const CoinSpec& spec,
                                const SeriesTruncation& trunc);

// n steps with coin e^{i lambda s3} in closed form: each coin component
// translates rigidly and picks up a pure phase,
//   out(x, y) = e^{i n lambda y} in(x - n y, y).
CoinedState sigma3_closed_form(const CoinedState& in, double lambda, int steps);

// n-step amplitudes by exhaustive enumeration of jump tuples (k_1..k_n) in
// [0, K]^n, the deterministic counterpart of the Monte Carlo estimator.
// Guards: steps <= 4 and trunc.order <= 40, else ComplexityGuard.
CoinedState nstep_bruteforce(const PointMassInitialState& init,
                             const CoinSpec& spec, int steps,
                             const SeriesTruncation& trunc);

}  // namespace qwalk
