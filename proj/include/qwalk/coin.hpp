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

#include <array>

#include "qwalk/types.hpp"

namespace qwalk {

// Euler angles of a U(2) coin, C = e^{i delta} e^{i l1 s3} e^{i l2 s2}
// e^{i l3 s3}, with s2 = [[0,-i],[i,0]] and s3 = diag(1,-1) in the coin
// basis (|+1>, |-1>) = ((1,0)^T, (0,1)^T). All angles live in [0, 2*pi);
// the constructor wraps them.
struct CoinSpec {
    double delta = 0.0;
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    double lambda3 = 0.0;

    CoinSpec() = default;
    CoinSpec(double d, double l1, double l2, double l3)
        : delta(wrap_angle(d)),
          lambda1(wrap_angle(l1)),
          lambda2(wrap_angle(l2)),
          lambda3(wrap_angle(l3)) {}
};

// 2x2 complex matrix over the coin basis. Row/column 0 is the +1 coin
// component, row/column 1 the -1 component.
struct CoinMatrix {
    std::array<std::array<Amplitude, 2>, 2> m{};

    Amplitude& operator()(int row, int col) { return m[row][col]; }
    const Amplitude& operator()(int row, int col) const { return m[row][col]; }

    CoinMatrix operator*(const CoinMatrix& o) const;
    CoinMatrix adjoint() const;

    // max_{ij} |a_ij - b_ij|
    double max_abs_diff(const CoinMatrix& o) const;

    // ||U U^dagger - I||_max <= tol
    bool is_unitary(double tol = 1e-12) const;

    static CoinMatrix identity();
};

// Builds the coin matrix for a set of Euler angles. Total on all inputs.
CoinMatrix coin_from_euler(const CoinSpec& spec);

// Recovers a canonical set of Euler angles from a unitary: lambda2 in
// [0, pi/2], lambda1 in [0, pi) (the delta/delta+pi redundancy is resolved
// in favor of that range), lambda3 = 0 whenever a vanishing row entry
// leaves only one diagonal-angle combination determined. Throws
// NonUnitaryInput if U deviates from unitarity by more than 1e-10.
CoinSpec euler_decompose(const CoinMatrix& u);

// Angles whose coin matrix is exactly the Hadamard matrix
// (1/sqrt2) [[1,1],[1,-1]]: (3*pi/2, pi/2, pi/4, 0).
CoinSpec hadamard_spec();

// The Hadamard matrix itself.
CoinMatrix hadamard_matrix();

}  // namespace qwalk
