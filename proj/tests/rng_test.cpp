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
#include <cstdint>
#include <numbers>
#include <set>
#include <vector>

#include "doctest.h"
#include "qwalk/errors.hpp"
#include "qwalk/rng.hpp"

namespace {

using qwalk::RngStream;

constexpr double kPi = std::numbers::pi;

}  // namespace

TEST_SUITE("rng") {

TEST_CASE("the first words of stream (42, 0) are frozen") {
    // Regression pins: any change to the generator silently invalidates every
    // seeded result in the project, so the raw output is locked down.
    RngStream r(42, 0);
    CHECK(r.next_u64() == 8643895580192075859ull);
    CHECK(r.next_u64() == 6287785766076502189ull);
    CHECK(r.next_u64() == 6033254488940945703ull);
    CHECK(r.next_u64() == 8380643633896839790ull);
}

TEST_CASE("the first doubles of stream (42, 0) are frozen") {
    RngStream r(42, 0);
    CHECK(r.next_double() == 0.46858651833910492);
    CHECK(r.next_double() == 0.34086154938517876);
    CHECK(r.next_double() == 0.32706338120338474);
    CHECK(r.next_double() == 0.45431560173488827);
}

TEST_CASE("doubles stay inside the half-open unit interval") {
    RngStream r(7, 3);
    for (int i = 0; i < 10000; ++i) {
        const double u = r.next_double();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("identical seed and stream id reproduce bit for bit") {
    RngStream a(123456789, 17);
    RngStream b(123456789, 17);
    for (int i = 0; i < 64; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("different stream ids give unrelated sequences") {
    RngStream a(42, 0);
    RngStream b(42, 1);
    int differing = 0;
    for (int i = 0; i < 16; ++i) {
        if (a.next_u64() != b.next_u64()) ++differing;
    }
    CHECK(differing == 16);
}

TEST_CASE("different seeds give unrelated sequences") {
    RngStream a(42, 0);
    RngStream b(43, 0);
    int differing = 0;
    for (int i = 0; i < 16; ++i) {
        if (a.next_u64() != b.next_u64()) ++differing;
    }
    CHECK(differing == 16);
}

TEST_CASE("the first Poisson draws of stream (42, 0) are frozen") {
    RngStream r(42, 0);
    const std::vector<uint32_t> expected{1, 0, 0, 0, 1, 1, 1, 0, 2, 0, 0, 0};
    for (uint32_t want : expected) {
        CHECK(qwalk::sample_poisson(kPi / 4, r) == want);
    }
}

TEST_CASE("Poisson draws have the right mean and variance") {
    const double lambda = kPi / 4;
    const long long m = 1000000;
    RngStream r(42, 0);
    double sum = 0.0;
    double sumsq = 0.0;
    for (long long i = 0; i < m; ++i) {
        const double k = qwalk::sample_poisson(lambda, r);
        sum += k;
        sumsq += k * k;
    }
    const double mean = sum / static_cast<double>(m);
    const double var = sumsq / static_cast<double>(m) - mean * mean;
    // Three sigma on the mean, four on the variance (fourth central moment
    // of Poisson is lambda + 3 lambda^2, so the variance of the sample
    // variance is about (lambda + 2 lambda^2) / m).
    CHECK(std::abs(mean - lambda) <= 3.0 * std::sqrt(lambda / m));
    CHECK(std::abs(var - lambda) <=
          4.0 * std::sqrt((lambda + 2.0 * lambda * lambda) / m));
}

TEST_CASE("Poisson rates outside the supported range are rejected") {
    RngStream r(1, 0);
    CHECK_THROWS_AS(qwalk::sample_poisson(0.0, r), qwalk::RateOutOfRange);
    CHECK_THROWS_AS(qwalk::sample_poisson(-1.0, r), qwalk::RateOutOfRange);
    CHECK_THROWS_AS(qwalk::sample_poisson(20.0, r), qwalk::RateOutOfRange);
    CHECK_THROWS_AS(qwalk::sample_poisson(25.0, r), qwalk::RateOutOfRange);
    CHECK(qwalk::sample_poisson(19.99, r) < 400u);
}

TEST_CASE("derived child seeds are frozen and well spread") {
    CHECK(qwalk::derive_seed(1, 0) == 10451216379200822465ull);
    CHECK(qwalk::derive_seed(1, 1) == 13757245211066428519ull);
    CHECK(qwalk::derive_seed(2, 0) == 10905525725756348110ull);
    std::set<uint64_t> seen;
    for (uint64_t i = 0; i < 100; ++i) {
        const uint64_t child = qwalk::derive_seed(42, i);
        CHECK(child != 0u);
        CHECK(child != 42u);
        seen.insert(child);
    }
    CHECK(seen.size() == 100);
}

}  // TEST_SUITE
