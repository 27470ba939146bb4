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

#include "qwalk/series.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "qwalk/errors.hpp"

namespace qwalk {

namespace {

constexpr double kTightTailTol = 1e-14;
constexpr int kMaxTightOrder = 400;
constexpr int kBruteForceMaxSteps = 4;
constexpr int kBruteForceMaxOrder = 40;

void require_usable(const SeriesTruncation& t, double lambda) {
    if (t.order < 0)
        throw TruncationInvalid("truncation order must be non-negative");
    if (!(lambda >= 0.0) || !std::isfinite(lambda))
        throw TruncationInvalid("series rate must be finite and non-negative");
    if (t.tail_bound(lambda) >= 1.0)
        throw TruncationInvalid(
            "truncation order " + std::to_string(t.order) +
            " carries an O(1) tail at rate " + std::to_string(lambda));
}

}  // namespace

double SeriesTruncation::tail_bound(double lambda) const {
    if (lambda == 0.0) return 0.0;
    const double log_tail = (order + 1) * std::log(lambda) -
                            std::lgamma(static_cast<double>(order) + 2.0) +
                            lambda;
    return std::exp(log_tail);
}

bool SeriesTruncation::is_tight_for(double lambda) const {
    return tail_bound(lambda) < kTightTailTol;
}

SeriesTruncation SeriesTruncation::tight_for(double lambda) {
    for (int k = 0; k <= kMaxTightOrder; ++k) {
        SeriesTruncation t{k};
        if (t.is_tight_for(lambda)) return t;
    }
    throw TruncationInvalid("no truncation order <= " +
                            std::to_string(kMaxTightOrder) +
                            " reaches a 1e-14 tail at rate " +
                            std::to_string(lambda));
}

CoinedState step_sigma2_series(const CoinedState& in, double lambda,
                               const SeriesTruncation& trunc) {
    require_usable(trunc, lambda);
    CoinedState out(in.x_min() - 1, in.x_max() + 1);
    for (int x = out.x_min(); x <= out.x_max(); ++x) {
        for (int y : {+1, -1}) {
            Amplitude acc{};
            double term = 1.0;  // lambda^k / k!
            for (int k = 0; k <= trunc.order; ++k) {
                if (k > 0) term *= lambda / k;
                const int yp = (k & 1) ? -y : y;
                const long long ipw = (k & 1) ? (k + yp) : k;
                const Amplitude src = (yp > 0) ? in.plus(x - y) : in.minus(x - y);
                acc += imag_unit_pow(ipw) * term * src;
            }
            if (y > 0)
                out.set_plus(x, acc);
            else
                out.set_minus(x, acc);
        }
    }
    return out;
}

CoinedState step_sigma3_series(const CoinedState& in, double lambda,
                               const SeriesTruncation& trunc) {
    require_usable(trunc, lambda);
    CoinedState out(in.x_min() - 1, in.x_max() + 1);
    for (int x = out.x_min(); x <= out.x_max(); ++x) {
        for (int y : {+1, -1}) {
            Amplitude acc{};
            double term = 1.0;
            for (int k = 0; k <= trunc.order; ++k) {
                if (k > 0) term *= lambda / k;
                const Amplitude src = (y > 0) ? in.plus(x - y) : in.minus(x - y);
                acc += imag_unit_pow(static_cast<long long>(k) * y) * term * src;
            }
            if (y > 0)
                out.set_plus(x, acc);
            else
                out.set_minus(x, acc);
        }
    }
    return out;
}

CoinedState step_general_series(const CoinedState& in, const CoinSpec& spec,
                                const SeriesTruncation& trunc) {
    require_usable(trunc, spec.lambda2);
    const Amplitude scalar = unit_phase(spec.delta);
    const Amplitude e1p = unit_phase(spec.lambda1);
    const Amplitude e3p = unit_phase(spec.lambda3);
    CoinedState out(in.x_min() - 1, in.x_max() + 1);
    for (int x = out.x_min(); x <= out.x_max(); ++x) {
        for (int y : {+1, -1}) {
            const Amplitude f1 = (y > 0) ? e1p : std::conj(e1p);
            Amplitude acc{};
            double term = 1.0;
            for (int k = 0; k <= trunc.order; ++k) {
                if (k > 0) term *= spec.lambda2 / k;
                const int yp = (k & 1) ? -y : y;
                const Amplitude f3 = (yp > 0) ? e3p : std::conj(e3p);
                const long long ipw = (k & 1) ? (k + yp) : k;
                const Amplitude src = (yp > 0) ? in.plus(x - y) : in.minus(x - y);
                acc += f1 * f3 * imag_unit_pow(ipw) * term * src;
            }
            if (y > 0)
                out.set_plus(x, scalar * acc);
            else
                out.set_minus(x, scalar * acc);
        }
    }
    return out;
}

CoinedState sigma3_closed_form(const CoinedState& in, double lambda,
                               int steps) {
    if (steps < 0)
        throw ConfigError("step count must be non-negative, got " +
                          std::to_string(steps));
    const Amplitude phase_plus = unit_phase(lambda * steps);
    CoinedState out(in.x_min() - steps, in.x_max() + steps);
    for (int x = in.x_min(); x <= in.x_max(); ++x) {
        out.set_plus(x + steps, phase_plus * in.plus(x));
        out.set_minus(x - steps, std::conj(phase_plus) * in.minus(x));
    }
    return out;
}

namespace {

// Shared enumeration state for nstep_bruteforce. One pass over jump tuples
// (k_1..k_n) fills both coin sectors: flipping the initial coin component
// negates every y_j in the chain, so the second sector reuses the same
// tuple with mirrored site, phase sums, and coin pick.
struct BruteForce {
    int n;
    int order;
    double lambda2;
    Amplitude alpha, beta;
    Amplitude scalar_n;                // e^{i n delta}
    std::vector<Amplitude> e1, e3;     // e^{i l1 s}, e^{i l3 s}, s in [-n, n]
    CoinedState out;

    Amplitude phase1(int s) const { return e1[static_cast<size_t>(s + n)]; }
    Amplitude phase3(int s) const { return e3[static_cast<size_t>(s + n)]; }

    // Tuple walk read from the evaluation point back to the source, the
    // same chain the Monte Carlo estimator samples: y = (-1)^{S_j} starts
    // at +1, `landing` accumulates y before each flip (so it ends as
    // sum_{j=0}^{n-1} (-1)^{S_j}, the +1-sector site), `tail` accumulates
    // y after each flip (sum_{j=1}^{n} (-1)^{S_j}, the s3 phase sum).
    // The per-flip s2 phases telescope to i^{-(S_n mod 2)} for this chain;
    // the -1 sector reuses the tuple with everything mirrored.
    void recurse(int j, int y_prev, long long jumps, int landing, int tail,
                 double term) {
        if (j > n) {
            const long long par = jumps & 1;  // 1 when the coin chain flipped
            const Amplitude chain = phase1(landing) * phase3(tail);
            const Amplitude wp = scalar_n * chain *
                                 imag_unit_pow(jumps - par) * term *
                                 (par ? beta : alpha);
            out.add_plus(landing, wp);
            const Amplitude wm = scalar_n * std::conj(chain) *
                                 imag_unit_pow(jumps + par) * term *
                                 (par ? alpha : beta);
            out.add_minus(-landing, wm);
            return;
        }
        double t = term;
        for (int k = 0; k <= order; ++k) {
            if (k > 0) t *= lambda2 / k;
            const int y_j = (k & 1) ? -y_prev : y_prev;
            recurse(j + 1, y_j, jumps + k, landing + y_prev, tail + y_j, t);
        }
    }
};

}  // namespace

CoinedState nstep_bruteforce(const PointMassInitialState& init,
                             const CoinSpec& spec, int steps,
                             const SeriesTruncation& trunc) {
    if (steps < 0)
        throw ConfigError("step count must be non-negative, got " +
                          std::to_string(steps));
    if (steps > kBruteForceMaxSteps || trunc.order > kBruteForceMaxOrder)
        throw ComplexityGuard(
            "brute-force enumeration supports steps <= " +
            std::to_string(kBruteForceMaxSteps) + " and order <= " +
            std::to_string(kBruteForceMaxOrder) + "; got steps = " +
            std::to_string(steps) + ", order = " + std::to_string(trunc.order));
    require_usable(trunc, spec.lambda2);

    const CoinedState start = point_mass_state(init);
    if (steps == 0) return start;

    BruteForce bf{steps,
                  trunc.order,
                  spec.lambda2,
                  init.alpha,
                  init.beta,
                  unit_phase(spec.delta * steps),
                  {},
                  {},
                  CoinedState(-steps, steps)};
    bf.e1.resize(static_cast<size_t>(2 * steps + 1));
    bf.e3.resize(bf.e1.size());
    for (int s = -steps; s <= steps; ++s) {
        bf.e1[static_cast<size_t>(s + steps)] = unit_phase(spec.lambda1 * s);
        bf.e3[static_cast<size_t>(s + steps)] = unit_phase(spec.lambda3 * s);
    }
    bf.recurse(1, +1, 0, 0, 0, 1.0);
    return bf.out;
}

}  // namespace qwalk
