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

#include "qwalk/types.hpp"

namespace qwalk {

// Point mass at the origin: amplitude alpha on the +1 coin component and
// beta on the -1 component.
struct PointMassInitialState {
    Amplitude alpha{1.0, 0.0};
    Amplitude beta{0.0, 0.0};
};

// Two-component wavefunction on a contiguous window [x_min, x_max] of the
// integer line. Index 0 of each array is site x_min. Amplitudes outside the
// window are identically zero.
class CoinedState {
  public:
    CoinedState() : x_min_(0), plus_(1), minus_(1) {}
    CoinedState(int x_min, int x_max);

    int x_min() const { return x_min_; }
    int x_max() const { return x_min_ + static_cast<int>(plus_.size()) - 1; }
    int size() const { return static_cast<int>(plus_.size()); }
    bool contains(int x) const { return x >= x_min() && x <= x_max(); }

    Amplitude plus(int x) const { return contains(x) ? plus_[x - x_min_] : Amplitude{}; }
    Amplitude minus(int x) const { return contains(x) ? minus_[x - x_min_] : Amplitude{}; }

    // Writes throw WindowOverflow outside the allocated window.
    void set_plus(int x, Amplitude v);
    void set_minus(int x, Amplitude v);
    void add_plus(int x, Amplitude v);
    void add_minus(int x, Amplitude v);

    std::vector<Amplitude>& plus_data() { return plus_; }
    std::vector<Amplitude>& minus_data() { return minus_; }
    const std::vector<Amplitude>& plus_data() const { return plus_; }
    const std::vector<Amplitude>& minus_data() const { return minus_; }

    double squared_norm() const;
    bool finite() const;

    // Copy onto the window [lo, hi]; throws WindowOverflow if a nonzero
    // amplitude would be truncated.
    CoinedState with_window(int lo, int hi) const;

    double max_abs_diff(const CoinedState& o) const;

  private:
    void check(int x) const;

    int x_min_;
    std::vector<Amplitude> plus_;
    std::vector<Amplitude> minus_;
};

// One-component wavefunction on a contiguous window of the integer line.
class ScalarState {
  public:
    ScalarState() : x_min_(0), amp_(1) {}
    ScalarState(int x_min, int x_max);

    int x_min() const { return x_min_; }
    int x_max() const { return x_min_ + static_cast<int>(amp_.size()) - 1; }
    int size() const { return static_cast<int>(amp_.size()); }
    bool contains(int x) const { return x >= x_min() && x <= x_max(); }

    Amplitude at(int x) const { return contains(x) ? amp_[x - x_min_] : Amplitude{}; }
    void set(int x, Amplitude v);
    void add(int x, Amplitude v);

    std::vector<Amplitude>& data() { return amp_; }
    const std::vector<Amplitude>& data() const { return amp_; }

    double squared_norm() const;
    bool finite() const;
    ScalarState with_window(int lo, int hi) const;
    double max_abs_diff(const ScalarState& o) const;

    static ScalarState delta_at_origin();

  private:
    void check(int x) const;

    int x_min_;
    std::vector<Amplitude> amp_;
};

// Validates |alpha|^2 + |beta|^2 = 1 (within 1e-10) and places the pair at
// the origin on the minimal window {0}. Throws NotNormalized otherwise.
CoinedState point_mass_state(const PointMassInitialState& init);

// Position probabilities on a contiguous window.
struct PositionDistribution {
    int x_min = 0;
    std::vector<double> p;

    int x_max() const { return x_min + static_cast<int>(p.size()) - 1; }
    double at(int x) const {
        return (x >= x_min && x <= x_max()) ? p[x - x_min] : 0.0;
    }
    double total() const;
};

// P(x) = |psi(x,+1)|^2 + |psi(x,-1)|^2
PositionDistribution distribution(const CoinedState& s);

// P(x) = |psi(x)|^2
PositionDistribution distribution(const ScalarState& s);

}  // namespace qwalk
