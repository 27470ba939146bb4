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

#include "qwalk/coin.hpp"

#include <cmath>

#include "qwalk/errors.hpp"

namespace qwalk {

namespace {

constexpr double kUnitarityTol = 1e-10;

// Below this magnitude a row entry's phase is treated as undetermined.
constexpr double kDegenerateTol = 1e-12;

}  // namespace

CoinMatrix CoinMatrix::operator*(const CoinMatrix& o) const {
    CoinMatrix r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            r(i, j) = m[i][0] * o(0, j) + m[i][1] * o(1, j);
    return r;
}

CoinMatrix CoinMatrix::adjoint() const {
    CoinMatrix r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r(i, j) = std::conj(m[j][i]);
    return r;
}

double CoinMatrix::max_abs_diff(const CoinMatrix& o) const {
    double d = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            d = std::max(d, std::abs(m[i][j] - o(i, j)));
    return d;
}

bool CoinMatrix::is_unitary(double tol) const {
    return ((*this) * adjoint()).max_abs_diff(identity()) <= tol;
}

CoinMatrix CoinMatrix::identity() {
    CoinMatrix r;
    r(0, 0) = 1.0;
    r(1, 1) = 1.0;
    return r;
}

CoinMatrix coin_from_euler(const CoinSpec& s) {
    // e^{i l s3} = diag(e^{il}, e^{-il});
    // e^{i l s2} = [[cos l, sin l], [-sin l, cos l]].
    const Amplitude g = unit_phase(s.delta);
    const Amplitude p1 = unit_phase(s.lambda1);
    const Amplitude p3 = unit_phase(s.lambda3);
    const double c = std::cos(s.lambda2);
    const double sn = std::sin(s.lambda2);

    CoinMatrix r;
    r(0, 0) = g * p1 * c * p3;
    r(0, 1) = g * p1 * sn * std::conj(p3);
    r(1, 0) = g * std::conj(p1) * (-sn) * p3;
    r(1, 1) = g * std::conj(p1) * c * std::conj(p3);
    return r;
}

CoinSpec euler_decompose(const CoinMatrix& u) {
    const double col0 = std::norm(u(0, 0)) + std::norm(u(1, 0));
    const double col1 = std::norm(u(0, 1)) + std::norm(u(1, 1));
    const Amplitude dot =
        std::conj(u(0, 0)) * u(0, 1) + std::conj(u(1, 0)) * u(1, 1);
    if (std::abs(col0 - 1.0) > kUnitarityTol ||
        std::abs(col1 - 1.0) > kUnitarityTol ||
        std::abs(dot) > kUnitarityTol) {
        throw NonUnitaryInput("euler_decompose: input deviates from unitarity "
                              "by more than 1e-10");
    }

    const double a00 = std::abs(u(0, 0));
    const double a01 = std::abs(u(0, 1));
    const double lambda2 = std::atan2(a01, a00);  // in [0, pi/2]

    const Amplitude det = u(0, 0) * u(1, 1) - u(0, 1) * u(1, 0);
    double delta = 0.5 * std::arg(det);

    // Phases of the top row relative to the global phase determine
    // l1 + l3 (from U00) and l1 - l3 (from U01).
    double lambda1 = 0.0;
    double lambda3 = 0.0;
    const Amplitude anti = unit_phase(-delta);
    if (a01 <= kDegenerateTol) {
        lambda1 = std::arg(u(0, 0) * anti);
    } else if (a00 <= kDegenerateTol) {
        lambda1 = std::arg(u(0, 1) * anti);
    } else {
        const double sum = std::arg(u(0, 0) * anti);
        const double diff = std::arg(u(0, 1) * anti);
        lambda1 = 0.5 * (sum + diff);
        lambda3 = 0.5 * (sum - diff);
    }

    // (delta, l1) and (delta+pi, l1+pi) produce the same matrix; pick the
    // representative with l1 in [0, pi).
    lambda1 = wrap_angle(lambda1);
    if (lambda1 >= kPi) {
        lambda1 -= kPi;
        delta += kPi;
    }
    return CoinSpec(delta, lambda1, lambda2, lambda3);
}

CoinSpec hadamard_spec() {
    return CoinSpec(1.5 * kPi, 0.5 * kPi, 0.25 * kPi, 0.0);
}

CoinMatrix hadamard_matrix() {
    const double r = 1.0 / std::sqrt(2.0);
    CoinMatrix h;
    h(0, 0) = r;
    h(0, 1) = r;
    h(1, 0) = r;
    h(1, 1) = -r;
    return h;
}

}  // namespace qwalk
