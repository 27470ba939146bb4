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

#include "qwalk/evolve.hpp"

#include <cmath>
#include <string>

#include "qwalk/errors.hpp"

namespace qwalk {

namespace {

constexpr int kMaxTaylorOrder = 512;
constexpr double kTaylorTailTol = 1e-14;

}  // namespace

LatticeGenerator::LatticeGenerator(double rate) : lambda(rate) {
    if (!(rate > 0.0) || !std::isfinite(rate))
        throw RateOutOfRange("generator rate " + std::to_string(rate) +
                             " must be positive and finite");
}

CoinedState step_coined(const CoinedState& in, const CoinMatrix& c) {
    CoinedState out(in.x_min() - 1, in.x_max() + 1);
    for (int x = out.x_min(); x <= out.x_max(); ++x) {
        out.set_plus(x, c(0, 0) * in.plus(x - 1) + c(0, 1) * in.minus(x - 1));
        out.set_minus(x, c(1, 0) * in.plus(x + 1) + c(1, 1) * in.minus(x + 1));
    }
    return out;
}

CoinedState evolve_coined(const CoinedState& init, const CoinMatrix& coin,
                          int steps) {
    if (steps < 0)
        throw ConfigError("step count must be non-negative, got " +
                          std::to_string(steps));
    CoinedState s = init;
    for (int i = 0; i < steps; ++i) s = step_coined(s, coin);
    return s;
}

int continuous_taylor_order(double lambda_t) {
    // Tail bound in log space: (K+1) log(lt) - lgamma(K+2) + lt < log tol.
    const double log_tol = std::log(kTaylorTailTol);
    if (lambda_t == 0.0) return 0;
    for (int k = 0; k <= kMaxTaylorOrder; ++k) {
        const double log_tail = (k + 1) * std::log(lambda_t) -
                                std::lgamma(static_cast<double>(k) + 2.0) +
                                lambda_t;
        if (log_tail < log_tol) return k;
    }
    throw NonConvergence("power-series propagator cannot reach 1e-14 within " +
                         std::to_string(kMaxTaylorOrder) +
                         " terms for lambda*t = " + std::to_string(lambda_t));
}

ScalarState evolve_continuous(const ScalarState& init,
                              const LatticeGenerator& gen, double t) {
    if (t < 0.0 || !std::isfinite(t))
        throw ConfigError("evolution time must be non-negative and finite");
    if (!(gen.lambda > 0.0))
        throw RateOutOfRange("generator rate must be positive");
    if (t == 0.0) return init;

    const double lt = gen.lambda * t;
    const int order = continuous_taylor_order(lt);

    // sum_k (i lt)^k / k! P^k psi, accumulated with two ping-pong buffers.
    ScalarState acc = init.with_window(init.x_min() - order, init.x_max() + order);
    ScalarState cur = acc;
    ScalarState nxt(acc.x_min(), acc.x_max());
    Amplitude coef{1.0, 0.0};
    const Amplitude ilt{0.0, lt};
    for (int k = 1; k <= order; ++k) {
        for (int x = nxt.x_min(); x <= nxt.x_max(); ++x)
            nxt.set(x, 0.5 * (cur.at(x - 1) + cur.at(x + 1)));
        std::swap(cur, nxt);
        coef *= ilt / static_cast<double>(k);
        for (int x = acc.x_min(); x <= acc.x_max(); ++x)
            acc.add(x, coef * cur.at(x));
    }
    return acc;
}

}  // namespace qwalk
