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

#include "qwalk/estimate.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "qwalk/errors.hpp"
#include "qwalk/types.hpp"

namespace qwalk {

namespace {

constexpr double kOverflowGuard = 30.0;       // cap on n*lambda2
constexpr double kPoissonRateCap = 20.0;      // sample_poisson domain
constexpr double kNoiseAdvisoryLevel = 0.05;  // e^{rate}/sqrt(M) threshold

class WallClock {
  public:
    double seconds() const {
        return std::chrono::duration<double>(
                   std::chrono::steady_clock::now() - start_)
            .count();
    }

  private:
    std::chrono::steady_clock::time_point start_ =
        std::chrono::steady_clock::now();
};

int resolve_workers(int workers) {
    if (workers < 0)
        throw ConfigError("workers must be >= 0 (0 = auto), got " +
                          std::to_string(workers));
    if (workers == 0) {
        const unsigned hc = std::thread::hardware_concurrency();
        workers = hc == 0 ? 1 : static_cast<int>(hc);
    }
    return std::min(workers, kEstimatorStreams);
}

// Contiguous sample partition across the fixed streams; the first
// samples % kEstimatorStreams chunks carry one extra sample.
std::vector<long long> chunk_sizes(long long samples) {
    std::vector<long long> sizes(kEstimatorStreams,
                                 samples / kEstimatorStreams);
    const long long extra = samples % kEstimatorStreams;
    for (long long c = 0; c < extra; ++c) ++sizes[c];
    return sizes;
}

// Executes body(c) for every nonempty chunk. Thread t owns chunks
// congruent to t mod workers; bodies write only chunk-private state, so
// no synchronization is needed and the merged result cannot depend on
// the worker count.
void run_chunks(const std::vector<long long>& sizes, int workers,
                const std::function<void(int)>& body) {
    if (workers <= 1) {
        for (int c = 0; c < kEstimatorStreams; ++c)
            if (sizes[c] > 0) body(c);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    for (int t = 0; t < workers; ++t) {
        pool.emplace_back([&sizes, &body, t, workers] {
            for (int c = t; c < kEstimatorStreams; c += workers)
                if (sizes[c] > 0) body(c);
        });
    }
    for (auto& th : pool) th.join();
}

// Batch-means standard error of the scaled mean at one site: the chunk
// means b_c = scale * z_c / m_c spread around their average; SE is that
// spread over sqrt(B). Zero when fewer than two chunks carry samples.
double batch_means_se(const std::vector<Amplitude>& chunk_sums,
                      const std::vector<long long>& sizes, Amplitude scale) {
    int b = 0;
    Amplitude mean{};
    for (int c = 0; c < kEstimatorStreams; ++c) {
        if (sizes[c] == 0) continue;
        ++b;
        mean += scale * chunk_sums[c] / static_cast<double>(sizes[c]);
    }
    if (b < 2) return 0.0;
    mean /= static_cast<double>(b);
    double spread = 0.0;
    for (int c = 0; c < kEstimatorStreams; ++c) {
        if (sizes[c] == 0) continue;
        const Amplitude bc = scale * chunk_sums[c] / static_cast<double>(sizes[c]);
        spread += std::norm(bc - mean);
    }
    return std::sqrt(spread / (static_cast<double>(b) * (b - 1)));
}

// Leave-one-chunk-out standard error of a probability built from one or
// two complex totals: p = sum_k amp2 * |total_k - chunk_k|^2 / (M - m_c)^2.
double jackknife_prob_se(
    const std::vector<const std::vector<Amplitude>*>& chunk_components,
    const std::vector<Amplitude>& totals, const std::vector<long long>& sizes,
    long long samples, double amp2) {
    int b = 0;
    for (int c = 0; c < kEstimatorStreams; ++c)
        if (sizes[c] > 0) ++b;
    if (b < 2) return 0.0;
    std::vector<double> loo;
    loo.reserve(static_cast<size_t>(b));
    for (int c = 0; c < kEstimatorStreams; ++c) {
        if (sizes[c] == 0) continue;
        const double rest = static_cast<double>(samples - sizes[c]);
        double p = 0.0;
        for (size_t k = 0; k < chunk_components.size(); ++k) {
            const Amplitude z =
                (totals[k] - (*chunk_components[k])[static_cast<size_t>(c)]) /
                rest;
            p += amp2 * std::norm(z);
        }
        loo.push_back(p);
    }
    double mean = 0.0;
    for (double p : loo) mean += p;
    mean /= static_cast<double>(b);
    double spread = 0.0;
    for (double p : loo) spread += (p - mean) * (p - mean);
    return std::sqrt(spread * (b - 1) / static_cast<double>(b));
}

}  // namespace

TrajectorySample sample_trajectory(int steps, double lambda2, RngStream& rng) {
    TrajectorySample out;
    sample_trajectory_into(steps, lambda2, rng, out);
    return out;
}

void sample_trajectory_into(int steps, double lambda2, RngStream& rng,
                            TrajectorySample& out) {
    if (steps < 1)
        throw ConfigError("trajectory length must be >= 1, got " +
                          std::to_string(steps));
    out.jumps.clear();
    out.partial_sums.clear();
    out.partial_sums.push_back(0);
    uint64_t sum = 0;
    long long landing = 0;
    int y = 1;  // (-1)^{S_j}, S_0 = 0
    for (int j = 0; j < steps; ++j) {
        landing += y;
        const uint32_t k = sample_poisson(lambda2, rng);
        out.jumps.push_back(k);
        sum += k;
        out.partial_sums.push_back(sum);
        if (k & 1u) y = -y;
    }
    out.landing_sum = landing;
}

EstimateReport estimate_discrete(const CoinSpec& spec,
                                 const PointMassInitialState& init, int steps,
                                 long long samples, uint64_t seed,
                                 int workers) {
    const WallClock clock;
    if (steps < 0)
        throw ConfigError("step count must be non-negative, got " +
                          std::to_string(steps));
    if (samples < 1)
        throw ConfigError("samples must be >= 1, got " +
                          std::to_string(samples));
    const int used = resolve_workers(workers);

    EstimateReport report;
    report.samples = samples;
    report.steps = steps;
    report.coin = spec;
    report.init = init;
    report.seed = seed;
    report.workers = used;

    if (steps == 0) {
        // S_0 = 0 with no draws: the weight is identically 1 and the
        // estimate is the initial state with no uncertainty.
        report.state = point_mass_state(init);
        report.std_err_plus.assign(1, 0.0);
        report.std_err_minus.assign(1, 0.0);
        report.probability = distribution(report.state);
        report.probability_std_err.assign(1, 0.0);
        report.wall_time = clock.seconds();
        return report;
    }

    const double l2 = spec.lambda2;
    if (!(l2 > 0.0) || !(l2 < kTwoPi))
        throw RateOutOfRange("lambda2 = " + std::to_string(l2) +
                             " outside the supported range (0, 2*pi)");
    const double rate = steps * l2;
    if (rate > kOverflowGuard)
        throw RateOutOfRange(
            "steps*lambda2 = " + std::to_string(rate) +
            " exceeds the overflow guard " + std::to_string(kOverflowGuard) +
            "; the e^{steps*lambda2} sample weight is unusable there");

    const int n = steps;
    const size_t width = static_cast<size_t>(2 * n + 1);
    std::vector<Amplitude> e1(width), e3(width);
    for (int s = -n; s <= n; ++s) {
        e1[static_cast<size_t>(s + n)] = unit_phase(spec.lambda1 * s);
        e3[static_cast<size_t>(s + n)] = unit_phase(spec.lambda3 * s);
    }

    const std::vector<long long> sizes = chunk_sizes(samples);
    std::vector<std::vector<Amplitude>> chunk_plus(kEstimatorStreams),
        chunk_minus(kEstimatorStreams);
    for (int c = 0; c < kEstimatorStreams; ++c) {
        if (sizes[c] == 0) continue;
        chunk_plus[c].assign(width, Amplitude{});
        chunk_minus[c].assign(width, Amplitude{});
    }

    run_chunks(sizes, used, [&](int c) {
        auto& plus = chunk_plus[c];
        auto& minus = chunk_minus[c];
        RngStream rng(seed, static_cast<uint64_t>(c));
        TrajectorySample traj;
        traj.jumps.reserve(static_cast<size_t>(n));
        traj.partial_sums.reserve(static_cast<size_t>(n) + 1);
        for (long long i = 0; i < sizes[c]; ++i) {
            sample_trajectory_into(n, l2, rng, traj);
            const long long total =
                static_cast<long long>(traj.partial_sums.back());
            const long long par = total & 1;
            const long long site = traj.landing_sum;
            const long long tail = site - 1 + (par ? -1 : 1);
            const Amplitude chain = e1[static_cast<size_t>(site + n)] *
                                    e3[static_cast<size_t>(tail + n)];
            if (par) {
                plus[static_cast<size_t>(site + n)] +=
                    chain * imag_unit_pow(total - 1) * init.beta;
                minus[static_cast<size_t>(n - site)] +=
                    std::conj(chain) * imag_unit_pow(total + 1) * init.alpha;
            } else {
                plus[static_cast<size_t>(site + n)] +=
                    chain * imag_unit_pow(total) * init.alpha;
                minus[static_cast<size_t>(n - site)] +=
                    std::conj(chain) * imag_unit_pow(total) * init.beta;
            }
        }
    });

    // Merge in fixed chunk order, then scale once.
    std::vector<Amplitude> zp(width), zm(width);
    for (int c = 0; c < kEstimatorStreams; ++c) {
        if (sizes[c] == 0) continue;
        for (size_t i = 0; i < width; ++i) {
            zp[i] += chunk_plus[c][i];
            zm[i] += chunk_minus[c][i];
        }
    }

    const double amp = std::exp(rate);
    const Amplitude scale = amp * unit_phase(spec.delta * n);
    const double inv_m = 1.0 / static_cast<double>(samples);

    report.state = CoinedState(-n, n);
    report.std_err_plus.assign(width, 0.0);
    report.std_err_minus.assign(width, 0.0);
    report.probability_std_err.assign(width, 0.0);
    std::vector<double> prob(width, 0.0);
    std::vector<Amplitude> site_plus(kEstimatorStreams),
        site_minus(kEstimatorStreams);
    for (size_t i = 0; i < width; ++i) {
        const int x = static_cast<int>(i) - n;
        const Amplitude vp = scale * zp[i] * inv_m;
        const Amplitude vm = scale * zm[i] * inv_m;
        report.state.set_plus(x, vp);
        report.state.set_minus(x, vm);
        prob[i] = std::norm(vp) + std::norm(vm);
        for (int c = 0; c < kEstimatorStreams; ++c) {
            site_plus[c] = sizes[c] ? chunk_plus[c][i] : Amplitude{};
            site_minus[c] = sizes[c] ? chunk_minus[c][i] : Amplitude{};
        }
        report.std_err_plus[i] = batch_means_se(site_plus, sizes, scale);
        report.std_err_minus[i] = batch_means_se(site_minus, sizes, scale);
        report.probability_std_err[i] = jackknife_prob_se(
            {&site_plus, &site_minus}, {zp[i], zm[i]}, sizes, samples,
            amp * amp);
    }
    report.probability = PositionDistribution{-n, std::move(prob)};
    report.amplification = amp;
    report.predicted_noise = amp / std::sqrt(static_cast<double>(samples));
    report.variance_advisory = report.predicted_noise > kNoiseAdvisoryLevel;
    report.wall_time = clock.seconds();
    return report;
}

EstimateReport estimate_sigma2(double lambda,
                               const PointMassInitialState& init, int steps,
                               long long samples, uint64_t seed, int workers) {
    return estimate_discrete(CoinSpec{0.0, 0.0, lambda, 0.0}, init, steps,
                             samples, seed, workers);
}

ScalarEstimateReport estimate_continuous(const LatticeGenerator& gen,
                                         const ScalarState& init, double time,
                                         long long samples, uint64_t seed,
                                         int workers) {
    const WallClock clock;
    if (!std::isfinite(time) || time < 0.0)
        throw ConfigError("evolution time must be finite and non-negative");
    if (samples < 1)
        throw ConfigError("samples must be >= 1, got " +
                          std::to_string(samples));
    const int used = resolve_workers(workers);

    ScalarEstimateReport report;
    report.samples = samples;
    report.time = time;
    report.rate = gen.lambda;
    report.seed = seed;
    report.workers = used;

    if (time == 0.0) {
        report.state = init;
        const size_t width = static_cast<size_t>(init.size());
        report.std_err.assign(width, 0.0);
        report.probability = distribution(init);
        report.probability_std_err.assign(width, 0.0);
        report.wall_time = clock.seconds();
        return report;
    }

    const double rate = gen.lambda * time;
    if (!(rate < kPoissonRateCap))
        throw RateOutOfRange(
            "lambda*t = " + std::to_string(rate) +
            " outside the range (0, 20) supported by Poisson inversion "
            "sampling");

    const int radius = static_cast<int>(std::ceil(rate)) + 50 +
                       static_cast<int>(std::ceil(10.0 * std::sqrt(rate + 1.0)));
    const int lo = init.x_min() - radius;
    const int hi = init.x_max() + radius;
    const size_t width = static_cast<size_t>(hi - lo + 1);

    struct Source {
        long long x;
        Amplitude amp;
    };
    std::vector<Source> sources;
    for (int x = init.x_min(); x <= init.x_max(); ++x) {
        const Amplitude a = init.at(x);
        if (a != Amplitude{}) sources.push_back({x, a});
    }

    const std::vector<long long> sizes = chunk_sizes(samples);
    std::vector<std::vector<Amplitude>> chunk_sums(kEstimatorStreams);
    std::vector<long long> chunk_overflow(kEstimatorStreams, 0);
    for (int c = 0; c < kEstimatorStreams; ++c)
        if (sizes[c] > 0) chunk_sums[c].assign(width, Amplitude{});

    run_chunks(sizes, used, [&](int c) {
        auto& acc = chunk_sums[c];
        long long overflow = 0;
        RngStream rng(seed, static_cast<uint64_t>(c));
        for (long long i = 0; i < sizes[c]; ++i) {
            const uint32_t n = sample_poisson(rate, rng);
            // D = sum of n independent +-1 increments, drawn 64 bits at a
            // time: D = 2 * popcount(bits) - n.
            uint32_t left = n;
            long long ones = 0;
            while (left >= 64) {
                ones += std::popcount(rng.next_u64());
                left -= 64;
            }
            if (left > 0) {
                const uint64_t mask = (uint64_t{1} << left) - 1;
                ones += std::popcount(rng.next_u64() & mask);
            }
            const long long displacement = 2 * ones - n;
            const Amplitude w = imag_unit_pow(n);
            for (const Source& s : sources) {
                const long long target = s.x + displacement;
                if (target < lo || target > hi) {
                    ++overflow;
                    continue;
                }
                acc[static_cast<size_t>(target - lo)] += w * s.amp;
            }
        }
        chunk_overflow[c] = overflow;
    });

    std::vector<Amplitude> z(width);
    long long overflow_total = 0;
    for (int c = 0; c < kEstimatorStreams; ++c) {
        if (sizes[c] == 0) continue;
        overflow_total += chunk_overflow[c];
        for (size_t i = 0; i < width; ++i) z[i] += chunk_sums[c][i];
    }

    const double amp = std::exp(rate);
    const Amplitude scale = amp;
    const double inv_m = 1.0 / static_cast<double>(samples);

    report.state = ScalarState(lo, hi);
    report.std_err.assign(width, 0.0);
    report.probability_std_err.assign(width, 0.0);
    std::vector<double> prob(width, 0.0);
    std::vector<Amplitude> site(kEstimatorStreams);
    for (size_t i = 0; i < width; ++i) {
        const int x = lo + static_cast<int>(i);
        const Amplitude v = scale * z[i] * inv_m;
        report.state.set(x, v);
        prob[i] = std::norm(v);
        for (int c = 0; c < kEstimatorStreams; ++c)
            site[c] = sizes[c] ? chunk_sums[c][i] : Amplitude{};
        report.std_err[i] = batch_means_se(site, sizes, scale);
        report.probability_std_err[i] =
            jackknife_prob_se({&site}, {z[i]}, sizes, samples, amp * amp);
    }
    report.probability = PositionDistribution{lo, std::move(prob)};
    report.amplification = amp;
    report.predicted_noise = amp / std::sqrt(static_cast<double>(samples));
    report.variance_advisory = report.predicted_noise > kNoiseAdvisoryLevel;
    report.overflow_samples = overflow_total;
    report.wall_time = clock.seconds();
    return report;
}

}  // namespace qwalk
