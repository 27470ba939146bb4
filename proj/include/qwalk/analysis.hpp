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
#include "qwalk/state.hpp"

namespace qwalk {

// Half the L1 distance between two position distributions over the union
// of their windows, after renormalizing each to unit mass. Inputs must be
// non-negative and carry total mass within mass_tolerance of 1; otherwise
// NotADistribution. Monte Carlo estimates drift at the 1/sqrt(M) scale, so
// comparison pipelines pass a loose tolerance and report the raw masses.
double total_variation(const PositionDistribution& p,
                       const PositionDistribution& q,
                       double mass_tolerance = 1e-6);

struct PerSiteError {
    int x = 0;
    double error = 0.0;  // |a(x) - e^{i phase} b(x)| summed over components
};

// Amplitude-level and distribution-level comparison of two states.
struct ComparisonReport {
    double tvd = 0.0;            // renormalized total-variation distance
    double l2_amp_error = 0.0;   // l2 norm of (a - e^{i aligned_phase} b)
    double aligned_phase = 0.0;  // radians; 0 when alignment is off
    double mass_a = 0.0;         // raw probability masses before
    double mass_b = 0.0;         // renormalization
    std::vector<PerSiteError> per_site_errors;
};

// Compares state `a` against reference `b` on the union window. With
// align_phase set, removes the global-phase ambiguity first: the reported
// error is min over phi of ||a - e^{i phi} b||_2, attained in closed form
// at phi = arg<b, a>. States whose mass is zero make tvd degenerate; it
// is reported as 0 (both empty) or 1 (one empty) without throwing.
ComparisonReport amplitude_error(const CoinedState& a, const CoinedState& b,
                                 bool align_phase);

// Scalar-state overload with the same contract.
ComparisonReport amplitude_error(const ScalarState& a, const ScalarState& b,
                                 bool align_phase);

// Fixed walk configuration for a convergence study.
struct DiscreteRunSpec {
    CoinSpec coin;
    PointMassInitialState init;
    int steps = 4;
    uint64_t seed = 1;
    int workers = 0;
};

struct ConvergencePoint {
    long long samples = 0;
    double tvd = 0.0;
    double l2_amp_error = 0.0;
    double slope_fit = 0.0;  // log-log slope over the grid prefix ending here
};

struct ConvergenceStudy {
    std::vector<ConvergencePoint> points;
    double slope = 0.0;       // least-squares slope of log(tvd) vs log(M)
    bool converging = false;  // slope below -0.2
};

// Runs the Monte Carlo estimator at every sample count in m_grid (strictly
// increasing, at least 3 entries, each >= 1; ConfigError otherwise), using
// a seed derived per grid point, and compares each run against the exact
// matrix evolution. The expected Monte Carlo rate makes the slope
// approach -1/2.
ConvergenceStudy convergence_study(const DiscreteRunSpec& run,
                                   const std::vector<long long>& m_grid);

}  // namespace qwalk
