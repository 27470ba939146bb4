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

#include "qwalk/analysis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "qwalk/errors.hpp"
#include "qwalk/estimate.hpp"
#include "qwalk/evolve.hpp"
#include "qwalk/rng.hpp"

namespace qwalk {

namespace {

constexpr double kEmptyMass = 1e-300;

// Half L1 distance of the mass-normalized distributions over the union
// window; degenerate (empty) inputs compare as all-or-nothing.
double tv_renormalized(const PositionDistribution& p,
                       const PositionDistribution& q) {
    const double mp = p.total();
    const double mq = q.total();
    if (mp <= kEmptyMass || mq <= kEmptyMass)
        return (mp <= kEmptyMass && mq <= kEmptyMass) ? 0.0 : 1.0;
    const int lo = std::min(p.x_min, q.x_min);
    const int hi = std::max(p.x_max(), q.x_max());
    double sum = 0.0;
    for (int x = lo; x <= hi; ++x) sum += std::abs(p.at(x) / mp - q.at(x) / mq);
    return 0.5 * sum;
}

void require_distribution(const PositionDistribution& d, double mass_tolerance,
                          const char* name) {
    for (size_t i = 0; i < d.p.size(); ++i) {
        if (d.p[i] < 0.0)
            throw NotADistribution(std::string(name) + " has negative mass " +
                                   std::to_string(d.p[i]) + " at site " +
                                   std::to_string(d.x_min + static_cast<int>(i)));
    }
    const double total = d.total();
    if (std::abs(total - 1.0) > mass_tolerance)
        throw NotADistribution(std::string(name) + " has total mass " +
                               std::to_string(total) + ", outside 1 +- " +
                               std::to_string(mass_tolerance));
}

double slope_fit(const std::vector<double>& logm,
                 const std::vector<double>& logt, size_t count) {
    double mx = 0.0, my = 0.0;
    for (size_t i = 0; i < count; ++i) {
        mx += logm[i];
        my += logt[i];
    }
    mx /= static_cast<double>(count);
    my /= static_cast<double>(count);
    double sxx = 0.0, sxy = 0.0;
    for (size_t i = 0; i < count; ++i) {
        sxx += (logm[i] - mx) * (logm[i] - mx);
        sxy += (logm[i] - mx) * (logt[i] - my);
    }
    return sxx > 0.0 ? sxy / sxx : 0.0;
}

}  // namespace

double total_variation(const PositionDistribution& p,
                       const PositionDistribution& q, double mass_tolerance) {
    require_distribution(p, mass_tolerance, "first distribution");
    require_distribution(q, mass_tolerance, "second distribution");
    return tv_renormalized(p, q);
}

namespace {

// Shared core over generic two-component site accessors.
template <typename At>
ComparisonReport compare_states(int lo, int hi, double mass_a, double mass_b,
                                const PositionDistribution& da,
                                const PositionDistribution& db, bool align,
                                At at) {
    ComparisonReport report;
    report.mass_a = mass_a;
    report.mass_b = mass_b;

    Amplitude inner{};  // <b, a>
    for (int x = lo; x <= hi; ++x) {
        const auto [ap, am, bp, bm] = at(x);
        inner += std::conj(bp) * ap + std::conj(bm) * am;
    }
    const double phase = (align && std::abs(inner) > 0.0)
                             ? std::arg(inner)
                             : 0.0;
    const Amplitude rot = unit_phase(phase);

    double sq = 0.0;
    report.per_site_errors.reserve(static_cast<size_t>(hi - lo + 1));
    for (int x = lo; x <= hi; ++x) {
        const auto [ap, am, bp, bm] = at(x);
        const double site =
            std::norm(ap - rot * bp) + std::norm(am - rot * bm);
        sq += site;
        report.per_site_errors.push_back({x, std::sqrt(site)});
    }
    report.l2_amp_error = std::sqrt(sq);
    report.aligned_phase = phase;
    report.tvd = tv_renormalized(da, db);
    return report;
}

}  // namespace

ComparisonReport amplitude_error(const CoinedState& a, const CoinedState& b,
                                 bool align_phase) {
    const int lo = std::min(a.x_min(), b.x_min());
    const int hi = std::max(a.x_max(), b.x_max());
    return compare_states(lo, hi, a.squared_norm(), b.squared_norm(),
                          distribution(a), distribution(b), align_phase,
                          [&](int x) {
                              return std::array<Amplitude, 4>{
                                  a.plus(x), a.minus(x), b.plus(x), b.minus(x)};
                          });
}

ComparisonReport amplitude_error(const ScalarState& a, const ScalarState& b,
                                 bool align_phase) {
    const int lo = std::min(a.x_min(), b.x_min());
    const int hi = std::max(a.x_max(), b.x_max());
    return compare_states(lo, hi, a.squared_norm(), b.squared_norm(),
                          distribution(a), distribution(b), align_phase,
                          [&](int x) {
                              return std::array<Amplitude, 4>{
                                  a.at(x), Amplitude{}, b.at(x), Amplitude{}};
                          });
}

ConvergenceStudy convergence_study(const DiscreteRunSpec& run,
                                   const std::vector<long long>& m_grid) {
    if (m_grid.size() < 3)
        throw ConfigError("convergence grid needs at least 3 sample counts, "
                          "got " +
                          std::to_string(m_grid.size()));
    for (size_t i = 0; i < m_grid.size(); ++i) {
        if (m_grid[i] < 1)
            throw ConfigError("convergence grid entries must be >= 1, got " +
                              std::to_string(m_grid[i]));
        if (i > 0 && m_grid[i] <= m_grid[i - 1])
            throw ConfigError(
                "convergence grid must be strictly increasing; entry " +
                std::to_string(m_grid[i]) + " follows " +
                std::to_string(m_grid[i - 1]));
    }

    const CoinedState reference = evolve_coined(
        point_mass_state(run.init), coin_from_euler(run.coin), run.steps);

    ConvergenceStudy study;
    std::vector<double> logm, logt;
    for (size_t i = 0; i < m_grid.size(); ++i) {
        const EstimateReport est =
            estimate_discrete(run.coin, run.init, run.steps, m_grid[i],
                              derive_seed(run.seed, i), run.workers);
        const ComparisonReport cmp =
            amplitude_error(est.state, reference, true);
        logm.push_back(std::log10(static_cast<double>(m_grid[i])));
        logt.push_back(std::log10(std::max(cmp.tvd, 1e-16)));
        ConvergencePoint point;
        point.samples = m_grid[i];
        point.tvd = cmp.tvd;
        point.l2_amp_error = cmp.l2_amp_error;
        point.slope_fit = i > 0 ? slope_fit(logm, logt, i + 1) : 0.0;
        study.points.push_back(point);
    }
    study.slope = study.points.back().slope_fit;
    study.converging = study.slope < -0.2;
    return study;
}

}  // namespace qwalk
