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

// Hopping generator on the integer line. SimpleSymmetricWalk hops to each
// neighbor with weight 1/2: (P psi)(x) = (psi(x-1) + psi(x+1)) / 2.
struct LatticeGenerator {
    enum class Kind { SimpleSymmetricWalk };

    double lambda = 1.0;
    Kind kind = Kind::SimpleSymmetricWalk;

    LatticeGenerator() = default;
    explicit LatticeGenerator(double rate);
};

// One step of the coined walk U = S (I (x) C) with S|x,y> = |x+y,y>:
// (U psi)(x, y) = sum_{y'} C[y, y'] psi(x - y, y').
// The output window is the input window grown by one site on each side.
CoinedState step_coined(const CoinedState& state, const CoinMatrix& coin);

// n repeated steps (n = 0 returns the input unchanged).
CoinedState evolve_coined(const CoinedState& init, const CoinMatrix& coin,
                          int steps);

// e^{i lambda P t} applied by truncated power series. The truncation order K
// is the smallest one with (lambda t)^{K+1}/(K+1)! * e^{lambda t} < 1e-14;
// throws NonConvergence if no K <= 512 reaches that bound. The output window
// is the input window grown by K sites on each side.
ScalarState evolve_continuous(const ScalarState& init,
                              const LatticeGenerator& gen, double t);

// Truncation order used by evolve_continuous for a given lambda*t.
int continuous_taylor_order(double lambda_t);

}  // namespace qwalk
