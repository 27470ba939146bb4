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
#include <cmath>
#include <cstdint>
#include <string>

#include "qwalk/errors.hpp"

namespace qwalk {

// Counter-based stream generator (Philox 4x32, 10 rounds). The key is the
// 64-bit seed; the high counter words carry the stream id, so every
// (seed, stream_id) pair addresses a disjoint 2^64-block counter space and
// streams can be handed to workers without coordination. Draws are pure
// integer arithmetic: identical (seed, stream_id) sequences reproduce
// bit-for-bit across runs and platforms.
class RngStream {
  public:
    RngStream(uint64_t seed, uint64_t stream_id)
        : key_{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32)},
          hi_{static_cast<uint32_t>(stream_id),
              static_cast<uint32_t>(stream_id >> 32)},
          seed_(seed),
          stream_id_(stream_id) {}

    uint64_t seed() const { return seed_; }
    uint64_t stream_id() const { return stream_id_; }

    uint64_t next_u64() {
        if (pos_ >= 4) refill();
        const uint64_t lo = buf_[pos_];
        const uint64_t hi = buf_[pos_ + 1];
        pos_ += 2;
        return lo | (hi << 32);
    }

    // Uniform double in [0, 1) with 53 random bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

  private:
    static void mulhilo(uint32_t a, uint32_t b, uint32_t& hi, uint32_t& lo) {
        const uint64_t p = static_cast<uint64_t>(a) * b;
        hi = static_cast<uint32_t>(p >> 32);
        lo = static_cast<uint32_t>(p);
    }

    static std::array<uint32_t, 4> round(const std::array<uint32_t, 4>& c,
                                         const std::array<uint32_t, 2>& k) {
        uint32_t hi0, lo0, hi1, lo1;
        mulhilo(0xD2511F53u, c[0], hi0, lo0);
        mulhilo(0xCD9E8D57u, c[2], hi1, lo1);
        return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
    }

    void refill() {
        std::array<uint32_t, 4> c{static_cast<uint32_t>(counter_),
                                  static_cast<uint32_t>(counter_ >> 32), hi_[0],
                                  hi_[1]};
        std::array<uint32_t, 2> k = key_;
        for (int r = 0; r < 10; ++r) {
            if (r > 0) {
                k[0] += 0x9E3779B9u;
                k[1] += 0xBB67AE85u;
            }
            c = round(c, k);
        }
        buf_ = c;
        pos_ = 0;
        ++counter_;
    }

    std::array<uint32_t, 2> key_;
    std::array<uint32_t, 2> hi_;
    uint64_t seed_;
    uint64_t stream_id_;
    uint64_t counter_ = 0;
    std::array<uint32_t, 4> buf_{};
    int pos_ = 4;
};

// Poisson draw by sequential-search inversion of the CDF. Exact for the
// supported range 0 < lambda < 20, where e^{-lambda} is far above the
// double underflow threshold; throws RateOutOfRange outside it.
inline uint32_t sample_poisson(double lambda, RngStream& rng) {
    if (!(lambda > 0.0) || !(lambda < 20.0))
        throw RateOutOfRange("Poisson rate " + std::to_string(lambda) +
                             " outside supported range (0, 20)");
    const double u = rng.next_double();
    double p = std::exp(-lambda);
    double cdf = p;
    uint32_t k = 0;
    // The CDF saturates numerically near k ~ lambda + 60; 400 bounds the
    // loop for any representable u.
    while (u > cdf && k < 400) {
        ++k;
        p *= lambda / k;
        cdf += p;
    }
    return k;
}

// Stateless hash used to derive independent child seeds (SplitMix64 mix).
inline uint64_t derive_seed(uint64_t seed, uint64_t index) {
    uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

}  // namespace qwalk
