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

#include "qwalk/state.hpp"

#include <cmath>
#include <string>

#include "qwalk/errors.hpp"

namespace qwalk {

namespace {

void require_window(int lo, int hi) {
    if (hi < lo)
        throw WindowOverflow("state window [" + std::to_string(lo) + ", " +
                             std::to_string(hi) + "] is empty");
}

}  // namespace

CoinedState::CoinedState(int x_min, int x_max) : x_min_(x_min) {
    require_window(x_min, x_max);
    plus_.assign(static_cast<size_t>(x_max - x_min + 1), Amplitude{});
    minus_.assign(plus_.size(), Amplitude{});
}

void CoinedState::check(int x) const {
    if (!contains(x))
        throw WindowOverflow("site " + std::to_string(x) +
                             " outside window [" + std::to_string(x_min()) +
                             ", " + std::to_string(x_max()) + "]");
}

void CoinedState::set_plus(int x, Amplitude v) { check(x); plus_[x - x_min_] = v; }
void CoinedState::set_minus(int x, Amplitude v) { check(x); minus_[x - x_min_] = v; }
void CoinedState::add_plus(int x, Amplitude v) { check(x); plus_[x - x_min_] += v; }
void CoinedState::add_minus(int x, Amplitude v) { check(x); minus_[x - x_min_] += v; }

double CoinedState::squared_norm() const {
    double n = 0.0;
    for (const auto& a : plus_) n += std::norm(a);
    for (const auto& a : minus_) n += std::norm(a);
    return n;
}

bool CoinedState::finite() const {
    for (const auto& a : plus_)
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) return false;
    for (const auto& a : minus_)
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) return false;
    return true;
}

CoinedState CoinedState::with_window(int lo, int hi) const {
    CoinedState out(lo, hi);
    for (int x = x_min(); x <= x_max(); ++x) {
        const Amplitude p = plus(x);
        const Amplitude m = minus(x);
        if (x < lo || x > hi) {
            if (p != Amplitude{} || m != Amplitude{})
                throw WindowOverflow(
                    "re-windowing to [" + std::to_string(lo) + ", " +
                    std::to_string(hi) + "] would truncate amplitude at " +
                    std::to_string(x));
            continue;
        }
        out.plus_[x - lo] = p;
        out.minus_[x - lo] = m;
    }
    return out;
}

double CoinedState::max_abs_diff(const CoinedState& o) const {
    const int lo = std::min(x_min(), o.x_min());
    const int hi = std::max(x_max(), o.x_max());
    double d = 0.0;
    for (int x = lo; x <= hi; ++x) {
        d = std::max(d, std::abs(plus(x) - o.plus(x)));
        d = std::max(d, std::abs(minus(x) - o.minus(x)));
    }
    return d;
}

ScalarState::ScalarState(int x_min, int x_max) : x_min_(x_min) {
    require_window(x_min, x_max);
    amp_.assign(static_cast<size_t>(x_max - x_min + 1), Amplitude{});
}

void ScalarState::check(int x) const {
    if (!contains(x))
        throw WindowOverflow("site " + std::to_string(x) +
                             " outside window [" + std::to_string(x_min()) +
                             ", " + std::to_string(x_max()) + "]");
}

void ScalarState::set(int x, Amplitude v) { check(x); amp_[x - x_min_] = v; }
void ScalarState::add(int x, Amplitude v) { check(x); amp_[x - x_min_] += v; }

double ScalarState::squared_norm() const {
    double n = 0.0;
    for (const auto& a : amp_) n += std::norm(a);
    return n;
}

bool ScalarState::finite() const {
    for (const auto& a : amp_)
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) return false;
    return true;
}

ScalarState ScalarState::with_window(int lo, int hi) const {
    ScalarState out(lo, hi);
    for (int x = x_min(); x <= x_max(); ++x) {
        const Amplitude a = at(x);
        if (x < lo || x > hi) {
            if (a != Amplitude{})
                throw WindowOverflow(
                    "re-windowing to [" + std::to_string(lo) + ", " +
                    std::to_string(hi) + "] would truncate amplitude at " +
                    std::to_string(x));
            continue;
        }
        out.amp_[x - lo] = a;
    }
    return out;
}

double ScalarState::max_abs_diff(const ScalarState& o) const {
    const int lo = std::min(x_min(), o.x_min());
    const int hi = std::max(x_max(), o.x_max());
    double d = 0.0;
    for (int x = lo; x <= hi; ++x) d = std::max(d, std::abs(at(x) - o.at(x)));
    return d;
}

ScalarState ScalarState::delta_at_origin() {
    ScalarState s(0, 0);
    s.set(0, Amplitude{1.0, 0.0});
    return s;
}

CoinedState point_mass_state(const PointMassInitialState& init) {
    const double n = std::norm(init.alpha) + std::norm(init.beta);
    if (std::abs(n - 1.0) > 1e-10)
        throw NotNormalized("|alpha|^2 + |beta|^2 = " + std::to_string(n) +
                            " must equal 1 within 1e-10");
    CoinedState s(0, 0);
    s.set_plus(0, init.alpha);
    s.set_minus(0, init.beta);
    return s;
}

double PositionDistribution::total() const {
    double t = 0.0;
    for (double v : p) t += v;
    return t;
}

PositionDistribution distribution(const CoinedState& s) {
    PositionDistribution d;
    d.x_min = s.x_min();
    d.p.resize(static_cast<size_t>(s.size()));
    for (int x = s.x_min(); x <= s.x_max(); ++x)
        d.p[x - s.x_min()] = std::norm(s.plus(x)) + std::norm(s.minus(x));
    return d;
}

PositionDistribution distribution(const ScalarState& s) {
    PositionDistribution d;
    d.x_min = s.x_min();
    d.p.resize(static_cast<size_t>(s.size()));
    for (int x = s.x_min(); x <= s.x_max(); ++x)
        d.p[x - s.x_min()] = std::norm(s.at(x));
    return d;
}

}  // namespace qwalk
