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
#include <random>

#include "doctest.h"
#include "qwalk/coin.hpp"
#include "qwalk/errors.hpp"
#include "qwalk/types.hpp"

namespace {

using qwalk::Amplitude;
using qwalk::CoinMatrix;
using qwalk::CoinSpec;

constexpr double kInvSqrt2 = 0.70710678118654752440;

CoinMatrix random_unitary(std::mt19937& gen) {
    std::uniform_real_distribution<double> angle(0.0, qwalk::kTwoPi);
    return qwalk::coin_from_euler(
        CoinSpec(angle(gen), angle(gen), angle(gen), angle(gen)));
}

}  // namespace

TEST_SUITE("coin") {

TEST_CASE("pure sigma2/sigma3 angles reproduce frozen matrices") {
    // (0, pi/2, pi/4, 0) builds i*H: the pi/2 diagonal rotation promotes
    // the real Hadamard to a global factor of i.
    const CoinMatrix ih =
        qwalk::coin_from_euler(CoinSpec(0.0, qwalk::kPi / 2, qwalk::kPi / 4,
                                        0.0));
    const Amplitude i{0.0, 1.0};
    CHECK(std::abs(ih(0, 0) - i * kInvSqrt2) < 1e-14);
    CHECK(std::abs(ih(0, 1) - i * kInvSqrt2) < 1e-14);
    CHECK(std::abs(ih(1, 0) - i * kInvSqrt2) < 1e-14);
    CHECK(std::abs(ih(1, 1) + i * kInvSqrt2) < 1e-14);

    // A pure sigma3 rotation is diagonal with conjugate phases.
    const double lam = 1.234;
    const CoinMatrix d =
        qwalk::coin_from_euler(CoinSpec(0.0, lam, 0.0, 0.0));
    CHECK(std::abs(d(0, 0) - qwalk::unit_phase(lam)) < 1e-15);
    CHECK(std::abs(d(1, 1) - qwalk::unit_phase(-lam)) < 1e-15);
    CHECK(std::abs(d(0, 1)) == 0.0);
    CHECK(std::abs(d(1, 0)) == 0.0);
}

TEST_CASE("hadamard preset builds exactly H") {
    const CoinMatrix h = qwalk::coin_from_euler(qwalk::hadamard_spec());
    const CoinMatrix want = qwalk::hadamard_matrix();
    CHECK(h.max_abs_diff(want) < 1e-14);
    CHECK(want(0, 0).real() == doctest::Approx(kInvSqrt2).epsilon(1e-15));
    CHECK(want(1, 1).real() == doctest::Approx(-kInvSqrt2).epsilon(1e-15));
    CHECK(qwalk::hadamard_spec().delta ==
          doctest::Approx(3 * qwalk::kPi / 2));
}

TEST_CASE("euler coins are unitary for random angles") {
    std::mt19937 gen(7);
    for (int trial = 0; trial < 50; ++trial) {
        CHECK(random_unitary(gen).is_unitary(1e-12));
    }
}

TEST_CASE("decompose then rebuild round-trips random unitaries") {
    std::mt19937 gen(11);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const CoinMatrix u = random_unitary(gen);
        const CoinSpec spec = qwalk::euler_decompose(u);
        const CoinMatrix rebuilt = qwalk::coin_from_euler(spec);
        worst = std::max(worst, rebuilt.max_abs_diff(u));
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("decompose returns canonical angle ranges") {
    std::mt19937 gen(13);
    for (int trial = 0; trial < 50; ++trial) {
        const CoinSpec spec = qwalk::euler_decompose(random_unitary(gen));
        CHECK(spec.lambda2 >= 0.0);
        CHECK(spec.lambda2 <= qwalk::kPi / 2 + 1e-12);
        CHECK(spec.lambda1 >= 0.0);
        CHECK(spec.lambda1 < qwalk::kPi + 1e-12);
        for (const double a :
             {spec.delta, spec.lambda1, spec.lambda2, spec.lambda3}) {
            CHECK(a >= 0.0);
            CHECK(a < qwalk::kTwoPi);
        }
    }
}

TEST_CASE("hadamard decomposes back to its defining angles") {
    const CoinSpec spec = qwalk::euler_decompose(qwalk::hadamard_matrix());
    CHECK(spec.delta == doctest::Approx(3 * qwalk::kPi / 2).epsilon(1e-12));
    CHECK(spec.lambda1 == doctest::Approx(qwalk::kPi / 2).epsilon(1e-12));
    CHECK(spec.lambda2 == doctest::Approx(qwalk::kPi / 4).epsilon(1e-12));
    CHECK(std::abs(spec.lambda3) < 1e-12);
    CHECK(qwalk::coin_from_euler(spec).max_abs_diff(
              qwalk::hadamard_matrix()) < 1e-14);
}

TEST_CASE("diagonal coins decompose with lambda3 folded away") {
    const CoinMatrix d =
        qwalk::coin_from_euler(CoinSpec(0.3, 0.9, 0.0, 1.1));
    const CoinSpec spec = qwalk::euler_decompose(d);
    CHECK(spec.lambda3 == 0.0);  // degenerate direction pinned to zero
    CHECK(qwalk::coin_from_euler(spec).max_abs_diff(d) < 1e-12);
}

TEST_CASE("non-unitary input is rejected") {
    CoinMatrix bad = CoinMatrix::identity();
    bad(1, 1) = Amplitude{2.0, 0.0};
    CHECK_THROWS_AS(qwalk::euler_decompose(bad), qwalk::NonUnitaryInput);

    CoinMatrix shear = CoinMatrix::identity();
    shear(0, 1) = Amplitude{1.0, 0.0};
    CHECK_THROWS_AS(qwalk::euler_decompose(shear), qwalk::NonUnitaryInput);
}

TEST_CASE("spec constructor wraps angles into [0, 2*pi)") {
    const CoinSpec s(-qwalk::kPi / 2, qwalk::kTwoPi + 0.5, 4 * qwalk::kPi,
                     -0.25);
    CHECK(s.delta == doctest::Approx(3 * qwalk::kPi / 2));
    CHECK(s.lambda1 == doctest::Approx(0.5));
    CHECK(std::abs(s.lambda2) < 1e-12);
    CHECK(s.lambda3 == doctest::Approx(qwalk::kTwoPi - 0.25));
}

TEST_CASE("matrix helpers: product, adjoint, identity") {
    std::mt19937 gen(17);
    const CoinMatrix u = random_unitary(gen);
    const CoinMatrix id = u * u.adjoint();
    CHECK(id.max_abs_diff(CoinMatrix::identity()) < 1e-12);
}

}  // TEST_SUITE
