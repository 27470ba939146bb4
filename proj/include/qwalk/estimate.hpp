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

#include <cstdint>
#include <vector>

#include "qwalk/coin.hpp"
#include "qwalk/evolve.hpp"
#include "qwalk/rng.hpp"
#include "qwalk/state.hpp"

namespace qwalk {

// Samples are partitioned contiguously across this fixed number of RNG
// streams (stream_id = chunk index = batch index for standard errors).
// Worker threads only execute chunks, so estimates are bitwise identical
// for every worker count.
inline constexpr int kEstimatorStreams = 64;

// One Monte Carlo trajectory for the discrete walk: i.i.d. Poisson jump
// counts per step, their running sums, and the signed landing sum
//   landing_sum = sum_{j=0}^{n-1} (-1)^{S_j},
// which addresses the accumulation site for the +1 coin sector (the -1
// sector mirrors it).
struct TrajectorySample {
    std::vector<uint32_t> jumps;         // N_1..N_n
    std::vector<uint64_t> partial_sums;  // S_0 = 0, S_j = S_{j-1} + N_j
    long long landing_sum = 0;
};

// Draws one trajectory of `steps` >= 1 Poisson(lambda2) jump counts.
// Throws ConfigError for steps < 1 and RateOutOfRange via sample_poisson.
TrajectorySample sample_trajectory(int steps, double lambda2, RngStream& rng);

// Identical draws, reusing the buffers of `out` (no allocation once
// capacity is reached); the hot-loop form of sample_trajectory.
void sample_trajectory_into(int steps, double lambda2, RngStream& rng,
                            TrajectorySample& out);

// Monte Carlo estimate of an n-step coined-walk state, with per-site
// uncertainties. Arrays are aligned with the state window (index x - x_min).
struct EstimateReport {
    CoinedState state;
    std::vector<double> std_err_plus;   // complex-modulus batch-means SE
    std::vector<double> std_err_minus;
    PositionDistribution probability;   // |psi_+|^2 + |psi_-|^2 per site
    std::vector<double> probability_std_err;  // leave-one-batch-out SE
    long long samples = 0;
    int steps = 0;
    CoinSpec coin;
    PointMassInitialState init;
    uint64_t seed = 0;
    int workers = 0;                // threads actually used
    double amplification = 1.0;     // e^{n lambda2}: per-sample weight scale
    double predicted_noise = 0.0;   // e^{n lambda2} / sqrt(samples)
    bool variance_advisory = false; // predicted_noise > 0.05
    double wall_time = 0.0;  // seconds; diagnostic only, never serialized
};

// Scalar-walk counterpart for the continuous-time estimator.
struct ScalarEstimateReport {
    ScalarState state;
    std::vector<double> std_err;
    PositionDistribution probability;
    std::vector<double> probability_std_err;
    long long samples = 0;
    double time = 0.0;
    double rate = 1.0;  // generator rate lambda
    uint64_t seed = 0;
    int workers = 0;
    double amplification = 1.0;  // e^{lambda t}
    double predicted_noise = 0.0;
    bool variance_advisory = false;
    long long overflow_samples = 0;  // endpoints past the window (dropped)
    double wall_time = 0.0;
};

// Estimates the n-step state of the coined walk with Euler coin `spec`
// from a point-mass start, by averaging M weighted jump trajectories:
// one trajectory per iteration serves both coin sectors. For the +1
// sector at site x = landing_sum (S = S_n, p = (-1)^S, T = x - 1 + p):
//   weight = e^{n l2} e^{i n d} e^{i l1 x} e^{i l3 T} i^{S - (S mod 2)}
//            * (alpha if p = 1 else beta),
// and the -1 sector accumulates the mirrored weight (conjugate phases,
// i^{S + (S mod 2)}, swapped alpha/beta) at -x. Raw sums are divided by
// M once at the end.
//
// steps = 0 returns init exactly with zero errors. Preconditions:
// samples >= 1, steps >= 0 (ConfigError); 0 < lambda2 < 2*pi and
// steps*lambda2 <= 30 (RateOutOfRange; e^{n l2} overflows usefulness
// beyond that). workers = 0 picks the hardware thread count; the result
// is independent of it either way. Deterministic given (seed, samples,
// parameters): identical reports bit for bit.
EstimateReport estimate_discrete(const CoinSpec& spec,
                                 const PointMassInitialState& init, int steps,
                                 long long samples, uint64_t seed,
                                 int workers);

// The pure-rotation special case: estimate_discrete with spec
// (0, 0, lambda, 0). Kept as a named entry point so the elementary
// representation is directly addressable in tests.
EstimateReport estimate_sigma2(double lambda, const PointMassInitialState& init,
                               int steps, long long samples, uint64_t seed,
                               int workers);

// Estimates e^{i lambda P t} applied to `init` (P the averaged shift pair)
// by the jump-chain representation: per iteration draw N ~ Poisson(lambda t),
// walk N symmetric +-1 steps, and scatter e^{lambda t} i^N init(s) from each
// source site s to s + displacement (the symmetric walk is reversible, so
// scatter and gather agree). t = 0 returns init exactly. Preconditions:
// t >= 0 finite, samples >= 1 (ConfigError); lambda*t < 20 (RateOutOfRange,
// Poisson inversion domain). Endpoints outside the accumulation window
// (radius ceil(lambda t) + 50 + ceil(10 sqrt(lambda t + 1)) past the init
// support) are dropped and tallied in overflow_samples.
ScalarEstimateReport estimate_continuous(const LatticeGenerator& gen,
                                         const ScalarState& init, double time,
                                         long long samples, uint64_t seed,
                                         int workers);

}  // namespace qwalk
