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

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "qwalk/analysis.hpp"
#include "qwalk/coin.hpp"
#include "qwalk/errors.hpp"
#include "qwalk/estimate.hpp"
#include "qwalk/evolve.hpp"
#include "qwalk/rng.hpp"
#include "qwalk/series.hpp"
#include "qwalk/state.hpp"

namespace {

using qwalk::Amplitude;
using qwalk::CoinedState;
using qwalk::CoinSpec;
using qwalk::EstimateReport;
using qwalk::PointMassInitialState;
using qwalk::RngStream;
using qwalk::ScalarEstimateReport;
using qwalk::ScalarState;
using qwalk::TrajectorySample;

constexpr double kPi = std::numbers::pi;

PointMassInitialState plus_init() {
    return {Amplitude{1.0, 0.0}, Amplitude{0.0, 0.0}};
}

PointMassInitialState balanced_init() {
    constexpr double r = 0.70710678118654752440;
    return {Amplitude{r, 0.0}, Amplitude{0.0, r}};
}

double se_plus_at(const EstimateReport& r, int x) {
    if (!r.state.contains(x)) return 0.0;
    return r.std_err_plus[static_cast<size_t>(x - r.state.x_min())];
}

double se_minus_at(const EstimateReport& r, int x) {
    if (!r.state.contains(x)) return 0.0;
    return r.std_err_minus[static_cast<size_t>(x - r.state.x_min())];
}

// Finds a stream whose first trajectory satisfies `pred`; the scan is
// deterministic, so the matching draw is a fixed regression input.
TrajectorySample find_trajectory(
    int steps, double lambda,
    const std::function<bool(const TrajectorySample&)>& pred) {
    for (uint64_t id = 0; id < 4096; ++id) {
        RngStream rng(1, id);
        TrajectorySample t = qwalk::sample_trajectory(steps, lambda, rng);
        if (pred(t)) return t;
    }
    REQUIRE(false);
    return {};
}

}  // namespace

TEST_SUITE("estimate") {

TEST_CASE("a trajectory with jumps (1, 0) lands back at the origin") {
    const TrajectorySample t = find_trajectory(
        2, 0.7, [](const TrajectorySample& s) {
            return s.jumps.size() == 2 && s.jumps[0] == 1 && s.jumps[1] == 0;
        });
    CHECK(t.partial_sums == std::vector<uint64_t>{0, 1, 1});
    // (-1)^0 + (-1)^1 = 0: one step right, one step left.
    CHECK(t.landing_sum == 0);
}

TEST_CASE("a jump-free trajectory marches straight right") {
    const TrajectorySample t = find_trajectory(
        3, 0.01, [](const TrajectorySample& s) {
            return s.jumps == std::vector<uint32_t>{0, 0, 0};
        });
    CHECK(t.partial_sums == std::vector<uint64_t>{0, 0, 0, 0});
    CHECK(t.landing_sum == 3);
}

TEST_CASE("trajectory invariants hold for random draws") {
    for (int i = 0; i < 2000; ++i) {
        const int n = 1 + (i % 8);
        const double lambda = 0.1 + 0.1 * (i % 29);
        RngStream rng(99, static_cast<uint64_t>(i));
        const TrajectorySample t = qwalk::sample_trajectory(n, lambda, rng);
        REQUIRE(t.jumps.size() == static_cast<size_t>(n));
        REQUIRE(t.partial_sums.size() == static_cast<size_t>(n) + 1);
        CHECK(t.partial_sums[0] == 0u);
        uint64_t s = 0;
        long long landing = 0;
        for (int j = 0; j < n; ++j) {
            CHECK(t.partial_sums[j + 1] >= t.partial_sums[j]);
            landing += (t.partial_sums[j] % 2 == 0) ? 1 : -1;
            s += t.jumps[j];
            CHECK(t.partial_sums[j + 1] == s);
        }
        CHECK(t.landing_sum == landing);
        CHECK(std::abs(t.landing_sum) <= n);
        CHECK(((t.landing_sum % 2 + 2) % 2) == (n % 2));
    }
}

TEST_CASE("trajectory sampling rejects a non-positive step count") {
    RngStream rng(1, 0);
    CHECK_THROWS_AS(qwalk::sample_trajectory(0, 0.5, rng), qwalk::ConfigError);
    CHECK_THROWS_AS(qwalk::sample_trajectory(-2, 0.5, rng),
                    qwalk::ConfigError);
}

TEST_CASE("the buffer-reusing sampler agrees with the allocating one") {
    RngStream a(5, 7);
    RngStream b(5, 7);
    TrajectorySample reused;
    for (int i = 0; i < 50; ++i) {
        const TrajectorySample fresh = qwalk::sample_trajectory(4, 1.1, a);
        qwalk::sample_trajectory_into(4, 1.1, b, reused);
        CHECK(fresh.jumps == reused.jumps);
        CHECK(fresh.partial_sums == reused.partial_sums);
        CHECK(fresh.landing_sum == reused.landing_sum);
    }
}

TEST_CASE("zero steps returns the initial state exactly") {
    const PointMassInitialState init{Amplitude{0.6, 0.0}, Amplitude{0.0, 0.8}};
    const EstimateReport r = qwalk::estimate_discrete(
        qwalk::hadamard_spec(), init, 0, 1000, 1, 1);
    CHECK(r.state.max_abs_diff(qwalk::point_mass_state(init)) == 0.0);
    for (double se : r.std_err_plus) CHECK(se == 0.0);
    for (double se : r.std_err_minus) CHECK(se == 0.0);
    for (double se : r.probability_std_err) CHECK(se == 0.0);
    CHECK(r.probability.at(0) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("the rotation-only entry point is the general one in disguise") {
    const double lambda = kPi / 4;
    const EstimateReport a =
        qwalk::estimate_sigma2(lambda, plus_init(), 3, 200000, 11, 0);
    const EstimateReport b = qwalk::estimate_discrete(
        CoinSpec(0.0, 0.0, lambda, 0.0), plus_init(), 3, 200000, 11, 0);
    CHECK(a.state.max_abs_diff(b.state) == 0.0);
    CHECK(a.std_err_plus == b.std_err_plus);
    CHECK(a.std_err_minus == b.std_err_minus);
    CHECK(a.probability_std_err == b.probability_std_err);
}

TEST_CASE("the estimate does not depend on the worker count") {
    const EstimateReport w1 = qwalk::estimate_discrete(
        qwalk::hadamard_spec(), plus_init(), 4, 100000, 3, 1);
    const EstimateReport w4 = qwalk::estimate_discrete(
        qwalk::hadamard_spec(), plus_init(), 4, 100000, 3, 4);
    const EstimateReport w0 = qwalk::estimate_discrete(
        qwalk::hadamard_spec(), plus_init(), 4, 100000, 3, 0);
    CHECK(w1.state.max_abs_diff(w4.state) == 0.0);
    CHECK(w1.state.max_abs_diff(w0.state) == 0.0);
    CHECK(w1.std_err_plus == w4.std_err_plus);
    CHECK(w1.probability_std_err == w4.probability_std_err);
}

TEST_CASE("the same seed reproduces the report bit for bit") {
    const EstimateReport a = qwalk::estimate_discrete(
        qwalk::hadamard_spec(), plus_init(), 3, 50000, 21, 0);
    const EstimateReport b = qwalk::estimate_discrete(
        qwalk::hadamard_spec(), plus_init(), 3, 50000, 21, 0);
    CHECK(a.state.max_abs_diff(b.state) == 0.0);
    CHECK(a.std_err_plus == b.std_err_plus);
    CHECK(a.std_err_minus == b.std_err_minus);
    CHECK(a.probability_std_err == b.probability_std_err);
}

TEST_CASE("the estimator agrees with exhaustive enumeration") {
    qwalk::SeriesTruncation trunc;
    trunc.order = 40;

    const CoinSpec spec(0.0, 0.0, kPi / 4, 0.0);
    const int n = 3;
    const long long m = 10000000;
    const EstimateReport est =
        qwalk::estimate_discrete(spec, plus_init(), n, m, 1, 0);
    const CoinedState exact =
        qwalk::nstep_bruteforce(plus_init(), spec, n, trunc);
    for (int x = -n; x <= n; ++x) {
        const double tol_p = std::max(4.0 * se_plus_at(est, x), 1e-12);
        const double tol_m = std::max(4.0 * se_minus_at(est, x), 1e-12);
        CHECK(std::abs(est.state.plus(x) - exact.plus(x)) <= tol_p);
        CHECK(std::abs(est.state.minus(x) - exact.minus(x)) <= tol_m);
    }
}

TEST_CASE("the rotation-only estimator agrees with exhaustive enumeration") {
    qwalk::SeriesTruncation trunc;
    trunc.order = 40;

    const double lambda = kPi / 4;
    const int n = 2;
    const EstimateReport est =
        qwalk::estimate_sigma2(lambda, plus_init(), n, 10000000, 2, 0);
    const CoinedState exact = qwalk::nstep_bruteforce(
        plus_init(), CoinSpec(0.0, 0.0, lambda, 0.0), n, trunc);
    for (int x = -n; x <= n; ++x) {
        const double tol_p = std::max(4.0 * se_plus_at(est, x), 1e-12);
        const double tol_m = std::max(4.0 * se_minus_at(est, x), 1e-12);
        CHECK(std::abs(est.state.plus(x) - exact.plus(x)) <= tol_p);
        CHECK(std::abs(est.state.minus(x) - exact.minus(x)) <= tol_m);
    }
}

TEST_CASE("the benchmark walk lands within the advertised distance") {
    // Six steps of the balanced coin at one hundred million samples: the
    // renormalized total-variation distance against the exact walk stays
    // inside 0.05.
    const qwalk::PointMassInitialState init = balanced_init();
    const EstimateReport est = qwalk::estimate_discrete(
        qwalk::hadamard_spec(), init, 6, 100000000, 7, 0);
    const CoinedState exact = qwalk::evolve_coined(
        qwalk::point_mass_state(init), qwalk::hadamard_matrix(), 6);
    const qwalk::ComparisonReport cmp =
        qwalk::amplitude_error(est.state, exact, false);
    CHECK(cmp.tvd <= 0.05);
    CHECK(cmp.mass_b == doctest::Approx(1.0).epsilon(1e-12));
    // Every site within five reported standard errors of the exact mass.
    const qwalk::PositionDistribution ref = qwalk::distribution(exact);
    for (int x = est.probability.x_min; x <= est.probability.x_max(); ++x) {
        const double se =
            est.probability_std_err[static_cast<size_t>(x - est.probability.x_min)];
        CHECK(std::abs(est.probability.at(x) - ref.at(x)) <=
              std::max(5.0 * se, 1e-12));
    }
}

TEST_CASE("the weighted average realizes the characteristic function") {
    // For one coin sector the estimator's phase sums realize
    // E[i^{S_n}] = e^{-n lambda} e^{i n lambda}, so the amplified average
    // must land on e^{i n lambda} within a few amplified standard errors.
    const double lambda = kPi / 4;
    const int n = 2;
    const long long m = 10000000;
    std::complex<double> acc{0.0, 0.0};
    TrajectorySample t;
    RngStream rng(31, 0);
    for (long long i = 0; i < m; ++i) {
        qwalk::sample_trajectory_into(n, lambda, rng, t);
        acc += qwalk::imag_unit_pow(
            static_cast<long long>(t.partial_sums[static_cast<size_t>(n)]));
    }
    const double amp = std::exp(n * lambda);
    const std::complex<double> est =
        amp * acc / static_cast<double>(m);
    const std::complex<double> target = std::polar(1.0, n * lambda);
    CHECK(std::abs(est - target) <= 4.0 * amp / std::sqrt(double(m)));
}

TEST_CASE("estimates pooled across seeds are centred on the exact value") {
    qwalk::SeriesTruncation trunc;
    trunc.order = 40;

    const CoinSpec spec(0.0, 0.0, kPi / 4, 0.0);
    const int n = 2;
    const int n_seeds = 50;
    const long long m = 200000;
    const CoinedState exact =
        qwalk::nstep_bruteforce(plus_init(), spec, n, trunc);
    for (const int x : {-2, 0, 2}) {
        std::vector<std::complex<double>> vals;
        vals.reserve(n_seeds);
        for (int s = 1; s <= n_seeds; ++s) {
            const EstimateReport r = qwalk::estimate_discrete(
                spec, plus_init(), n, m, static_cast<uint64_t>(s), 0);
            vals.push_back(r.state.plus(x));
        }
        std::complex<double> mean{0.0, 0.0};
        for (const auto& v : vals) mean += v;
        mean /= static_cast<double>(n_seeds);
        double var = 0.0;
        for (const auto& v : vals) var += std::norm(v - mean);
        var /= (n_seeds - 1);
        const double tol =
            4.0 * std::sqrt(var / n_seeds) + 1e-12;
        CHECK(std::abs(mean - exact.plus(x)) <= tol);
    }
}

TEST_CASE("the variance advisory trips exactly at the documented threshold") {
    const EstimateReport noisy = qwalk::estimate_discrete(
        qwalk::hadamard_spec(), balanced_init(), 6, 10000, 1, 0);
    CHECK(noisy.amplification ==
          doctest::Approx(std::exp(6 * kPi / 4)).epsilon(1e-14));
    CHECK(noisy.predicted_noise ==
          doctest::Approx(noisy.amplification / 100.0).epsilon(1e-14));
    CHECK(noisy.variance_advisory);

    const EstimateReport quiet = qwalk::estimate_discrete(
        qwalk::hadamard_spec(), balanced_init(), 1, 1000000, 1, 0);
    CHECK(quiet.predicted_noise ==
          doctest::Approx(std::exp(kPi / 4) / 1000.0).epsilon(1e-14));
    CHECK_FALSE(quiet.variance_advisory);
}

TEST_CASE("discrete estimator preconditions") {
    const PointMassInitialState init = plus_init();
    CHECK_THROWS_AS(qwalk::estimate_discrete(qwalk::hadamard_spec(), init, -1,
                                             100, 1, 0),
                    qwalk::ConfigError);
    CHECK_THROWS_AS(qwalk::estimate_discrete(qwalk::hadamard_spec(), init, 2,
                                             0, 1, 0),
                    qwalk::ConfigError);
    CHECK_THROWS_AS(qwalk::estimate_discrete(qwalk::hadamard_spec(), init, 2,
                                             100, 1, -1),
                    qwalk::ConfigError);
    CHECK_THROWS_AS(qwalk::estimate_discrete(CoinSpec(0.0, 0.0, 0.0, 0.0),
                                             init, 2, 100, 1, 0),
                    qwalk::RateOutOfRange);
    // steps * lambda2 = 36 > 30: the amplification factor is useless there.
    CHECK_THROWS_AS(qwalk::estimate_discrete(CoinSpec(0.0, 0.0, 6.0, 0.0),
                                             init, 6, 100, 1, 0),
                    qwalk::RateOutOfRange);
}

TEST_CASE("continuous estimation at time zero returns the start exactly") {
    const qwalk::LatticeGenerator gen(1.0);
    const ScalarEstimateReport r = qwalk::estimate_continuous(
        gen, ScalarState::delta_at_origin(), 0.0, 1000, 1, 0);
    CHECK(r.state.max_abs_diff(ScalarState::delta_at_origin()) == 0.0);
    for (double se : r.std_err) CHECK(se == 0.0);
}

TEST_CASE("continuous estimates match the exact kernel within four sigma") {
    const qwalk::LatticeGenerator gen(1.0);
    const ScalarEstimateReport r = qwalk::estimate_continuous(
        gen, ScalarState::delta_at_origin(), 1.0, 10000000, 5, 0);
    const Amplitude j0{0.76519768655796655, 0.0};
    const Amplitude j1{0.0, 0.44005058574493355};
    const auto se_at = [&](int x) {
        return r.state.contains(x)
                   ? r.std_err[static_cast<size_t>(x - r.state.x_min())]
                   : 0.0;
    };
    CHECK(std::abs(r.state.at(0) - j0) <= 4.0 * se_at(0));
    CHECK(std::abs(r.state.at(1) - j1) <= 4.0 * se_at(1));
    CHECK(std::abs(r.state.at(-1) - j1) <= 4.0 * se_at(-1));
    CHECK(r.overflow_samples == 0);
}

TEST_CASE("the continuous benchmark lands inside the advertised distance") {
    const qwalk::LatticeGenerator gen(1.0);
    const ScalarEstimateReport r = qwalk::estimate_continuous(
        gen, ScalarState::delta_at_origin(), 2.0, 10000000, 5, 0);
    const ScalarState exact =
        qwalk::evolve_continuous(ScalarState::delta_at_origin(), gen, 2.0);
    const qwalk::ComparisonReport cmp =
        qwalk::amplitude_error(r.state, exact, false);
    CHECK(cmp.tvd <= 0.02);
    CHECK(r.amplification == doctest::Approx(std::exp(2.0)).epsilon(1e-14));
}

TEST_CASE("continuous estimation is worker-count independent") {
    const qwalk::LatticeGenerator gen(1.0);
    const ScalarEstimateReport w1 = qwalk::estimate_continuous(
        gen, ScalarState::delta_at_origin(), 1.5, 100000, 9, 1);
    const ScalarEstimateReport w4 = qwalk::estimate_continuous(
        gen, ScalarState::delta_at_origin(), 1.5, 100000, 9, 4);
    CHECK(w1.state.max_abs_diff(w4.state) == 0.0);
    CHECK(w1.std_err == w4.std_err);
    CHECK(w1.probability_std_err == w4.probability_std_err);
}

TEST_CASE("continuous estimator preconditions") {
    const ScalarState init = ScalarState::delta_at_origin();
    const qwalk::LatticeGenerator gen(10.0);
    // rate * time = 20 leaves the Poisson inversion domain.
    CHECK_THROWS_AS(qwalk::estimate_continuous(gen, init, 2.0, 100, 1, 0),
                    qwalk::RateOutOfRange);
    const qwalk::LatticeGenerator ok(1.0);
    CHECK_THROWS_AS(qwalk::estimate_continuous(ok, init, -1.0, 100, 1, 0),
                    qwalk::ConfigError);
    CHECK_THROWS_AS(qwalk::estimate_continuous(ok, init, 1.0, 0, 1, 0),
                    qwalk::ConfigError);
}

}  // TEST_SUITE
