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

#include "qwalk/experiment.hpp"

#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "qwalk/analysis.hpp"
#include "qwalk/errors.hpp"
#include "qwalk/estimate.hpp"
#include "qwalk/evolve.hpp"
#include "qwalk/io.hpp"
#include "qwalk/series.hpp"
#include "qwalk/types.hpp"

namespace qwalk {

const char* mode_name(ExperimentMode mode) {
    switch (mode) {
        case ExperimentMode::kDiscreteMc: return "discrete_mc";
        case ExperimentMode::kDiscreteReference: return "discrete_reference";
        case ExperimentMode::kDiscreteSeries: return "discrete_series";
        case ExperimentMode::kContinuousMc: return "continuous_mc";
        case ExperimentMode::kContinuousReference: return "continuous_reference";
        case ExperimentMode::kCompare: return "compare";
        case ExperimentMode::kConvergence: return "convergence";
    }
    return "unknown";
}

ExperimentMode mode_from_name(const std::string& name) {
    static constexpr std::array<ExperimentMode, 7> kAll = {
        ExperimentMode::kDiscreteMc,          ExperimentMode::kDiscreteReference,
        ExperimentMode::kDiscreteSeries,      ExperimentMode::kContinuousMc,
        ExperimentMode::kContinuousReference, ExperimentMode::kCompare,
        ExperimentMode::kConvergence,
    };
    for (const ExperimentMode m : kAll) {
        if (name == mode_name(m)) return m;
    }
    throw ConfigError("unknown mode '" + name +
                      "' (valid: discrete_mc, discrete_reference, "
                      "discrete_series, continuous_mc, continuous_reference, "
                      "compare, convergence)");
}

const char* format_name(ArtifactFormat format) {
    switch (format) {
        case ArtifactFormat::kCsv: return "csv";
        case ArtifactFormat::kJson: return "json";
        case ArtifactFormat::kSvg: return "svg";
    }
    return "unknown";
}

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

constexpr const char* kReferenceColor = "#1f77b4";
constexpr const char* kEstimateColor = "#ff7f0e";

enum class Subcommand { kSimulate, kCompare, kConvergence };

// Pre-validation view of one configuration source (config file or flags).
// Unset fields fall through to the next source.
struct Draft {
    std::optional<std::string> mode;
    std::optional<std::string> coin_name;
    std::optional<std::array<double, 4>> angles;  // raw, before wrapping
    std::optional<std::array<double, 2>> alpha;
    std::optional<std::array<double, 2>> beta;
    std::optional<int> steps;
    std::optional<double> time;
    std::optional<double> rate;
    std::optional<long long> samples;
    std::optional<uint64_t> seed;
    std::optional<int> workers;
    std::optional<std::vector<long long>> m_grid;
    std::optional<std::string> out;
    std::optional<std::string> format;
};

template <typename T>
std::optional<T> pick(const std::optional<T>& file_value,
                      const std::optional<T>& flag_value) {
    return flag_value.has_value() ? flag_value : file_value;
}

std::string short_num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

double parse_number(const std::string& token, const char* flag) {
    try {
        size_t used = 0;
        const double v = std::stod(token, &used);
        while (used < token.size() &&
               std::isspace(static_cast<unsigned char>(token[used]))) {
            ++used;
        }
        if (used != token.size()) throw std::invalid_argument("trailing text");
        return v;
    } catch (const std::exception&) {
        throw ConfigError(std::string(flag) + ": '" + token +
                          "' is not a number");
    }
}

std::vector<std::string> split_on_commas(const std::string& text) {
    std::vector<std::string> parts;
    std::string cur;
    for (const char ch : text) {
        if (ch == ',') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    parts.push_back(cur);
    return parts;
}

template <size_t N>
std::array<double, N> parse_tuple(const std::string& text, const char* flag,
                                  const char* shape) {
    const std::vector<std::string> parts = split_on_commas(text);
    if (parts.size() != N) {
        throw ConfigError(std::string(flag) + " expects " +
                          std::to_string(N) + " comma-separated numbers (" +
                          shape + "); got '" + text + "'");
    }
    std::array<double, N> out{};
    for (size_t i = 0; i < N; ++i) out[i] = parse_number(parts[i], flag);
    return out;
}

// Raw option values as CLI11 leaves them; tuples stay strings until parsed.
struct FlagSet {
    std::optional<std::string> config, mode, coin, angles, alpha, beta, out,
        format;
    std::optional<int> steps, workers;
    std::optional<double> time, rate;
    std::optional<long long> samples;
    std::optional<uint64_t> seed;
};

Draft draft_from_flags(const FlagSet& f) {
    Draft d;
    d.mode = f.mode;
    d.coin_name = f.coin;
    d.out = f.out;
    d.format = f.format;
    d.steps = f.steps;
    d.time = f.time;
    d.rate = f.rate;
    d.samples = f.samples;
    d.seed = f.seed;
    d.workers = f.workers;
    if (f.angles) {
        d.angles = parse_tuple<4>(*f.angles, "--angles",
                                  "delta,lambda1,lambda2,lambda3");
    }
    if (f.alpha) d.alpha = parse_tuple<2>(*f.alpha, "--alpha", "re,im");
    if (f.beta) d.beta = parse_tuple<2>(*f.beta, "--beta", "re,im");
    return d;
}

ConfigError bad_key(const std::string& path, const std::string& key,
                    const char* need) {
    return ConfigError("config file '" + path + "': key '" + key + "' " +
                       need);
}

Draft load_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) {
        throw IoError("failed while reading config file '" + path + "'");
    }

    ordered_json j;
    try {
        j = ordered_json::parse(buf.str());
    } catch (const std::exception& e) {
        throw ConfigError("config file '" + path +
                          "' is not valid JSON: " + e.what());
    }
    if (!j.is_object()) {
        throw ConfigError("config file '" + path +
                          "' must hold a JSON object");
    }

    Draft d;
    for (const auto& item : j.items()) {
        const std::string& key = item.key();
        const ordered_json& val = item.value();
        if (key == "mode" || key == "out" || key == "format") {
            if (!val.is_string()) throw bad_key(path, key, "must be a string");
            const std::string s = val.get<std::string>();
            if (key == "mode") d.mode = s;
            if (key == "out") d.out = s;
            if (key == "format") d.format = s;
        } else if (key == "coin") {
            if (val.is_string()) {
                d.coin_name = val.get<std::string>();
            } else if (val.is_object()) {
                static constexpr const char* kAngleKeys[4] = {
                    "delta", "lambda1", "lambda2", "lambda3"};
                std::array<double, 4> angles{};
                for (const auto& sub : val.items()) {
                    bool known = false;
                    for (int i = 0; i < 4; ++i) {
                        if (sub.key() == kAngleKeys[i]) {
                            if (!sub.value().is_number()) {
                                throw bad_key(path, "coin." + sub.key(),
                                              "must be a number");
                            }
                            angles[i] = sub.value().get<double>();
                            known = true;
                        }
                    }
                    if (!known) {
                        throw bad_key(path, "coin." + sub.key(),
                                      "is not a coin angle (delta, lambda1, "
                                      "lambda2, lambda3)");
                    }
                }
                for (const char* k : kAngleKeys) {
                    if (!val.contains(k)) {
                        throw bad_key(path, std::string("coin.") + k,
                                      "is required when coin is an object");
                    }
                }
                d.angles = angles;
            } else {
                throw bad_key(path, key,
                              "must be a preset name or an object of the "
                              "four Euler angles");
            }
        } else if (key == "alpha" || key == "beta") {
            if (!val.is_array() || val.size() != 2 || !val[0].is_number() ||
                !val[1].is_number()) {
                throw bad_key(path, key, "must be an array [re, im]");
            }
            const std::array<double, 2> pair = {val[0].get<double>(),
                                                val[1].get<double>()};
            if (key == "alpha") d.alpha = pair;
            if (key == "beta") d.beta = pair;
        } else if (key == "steps" || key == "workers") {
            if (!val.is_number_integer()) {
                throw bad_key(path, key, "must be an integer");
            }
            if (key == "steps") d.steps = val.get<int>();
            if (key == "workers") d.workers = val.get<int>();
        } else if (key == "samples") {
            if (!val.is_number_integer()) {
                throw bad_key(path, key, "must be an integer");
            }
            d.samples = val.get<long long>();
        } else if (key == "seed") {
            if (!val.is_number_integer() ||
                (val.is_number_integer() && !val.is_number_unsigned() &&
                 val.get<long long>() < 0)) {
                throw bad_key(path, key, "must be a non-negative integer");
            }
            d.seed = val.get<uint64_t>();
        } else if (key == "time" || key == "rate") {
            if (!val.is_number()) throw bad_key(path, key, "must be a number");
            if (key == "time") d.time = val.get<double>();
            if (key == "rate") d.rate = val.get<double>();
        } else if (key == "m_grid") {
            if (!val.is_array()) {
                throw bad_key(path, key, "must be an array of integers");
            }
            std::vector<long long> grid;
            for (const auto& entry : val) {
                if (!entry.is_number_integer()) {
                    throw bad_key(path, key, "must be an array of integers");
                }
                grid.push_back(entry.get<long long>());
            }
            d.m_grid = grid;
        } else {
            throw ConfigError("config file '" + path + "': unknown key '" +
                              key + "'");
        }
    }
    return d;
}

std::optional<int> workers_from_env() {
    const char* raw = std::getenv("QWALK_WORKERS");
    if (raw == nullptr || *raw == '\0') return std::nullopt;
    char* end = nullptr;
    const long v = std::strtol(raw, &end, 10);
    if (end == raw || *end != '\0' || v < 0 || v > 1000000) {
        throw ConfigError(
            std::string("environment variable QWALK_WORKERS must be a "
                        "non-negative integer; got '") +
            raw + "'");
    }
    return static_cast<int>(v);
}

bool is_continuous(ExperimentMode m) {
    return m == ExperimentMode::kContinuousMc ||
           m == ExperimentMode::kContinuousReference;
}

bool is_sampled(ExperimentMode m) {
    return m == ExperimentMode::kDiscreteMc ||
           m == ExperimentMode::kContinuousMc ||
           m == ExperimentMode::kCompare;
}

// Resolves file draft, flag draft (flags win), and the environment into a
// validated config. Range checks happen here on the raw values so a bad
// field fails with its name and the valid range, before any wrapping.
ExperimentConfig materialize(const Draft& file, const Draft& flags,
                             Subcommand sub) {
    ExperimentConfig cfg;

    if (sub == Subcommand::kCompare) {
        cfg.mode = ExperimentMode::kCompare;
    } else if (sub == Subcommand::kConvergence) {
        cfg.mode = ExperimentMode::kConvergence;
    } else {
        const std::string name =
            pick(file.mode, flags.mode).value_or("discrete_mc");
        cfg.mode = mode_from_name(name);
        if (cfg.mode == ExperimentMode::kCompare ||
            cfg.mode == ExperimentMode::kConvergence) {
            throw ConfigError("mode '" + name +
                              "' has a dedicated subcommand; run 'qwalk " +
                              name + "'");
        }
    }
    const bool continuous = is_continuous(cfg.mode);
    const bool sampled = is_sampled(cfg.mode);

    // Reject flags that contradict the selected mode. Irrelevant fields in
    // a shared config file are ignored so one file can serve several modes.
    if (continuous) {
        if (flags.steps) {
            throw ConfigError(std::string("--steps does not apply to mode '") +
                              mode_name(cfg.mode) + "'");
        }
        if (flags.coin_name || flags.angles || flags.alpha || flags.beta) {
            throw ConfigError(
                std::string("coin options (--coin, --angles, --alpha, "
                            "--beta) do not apply to mode '") +
                mode_name(cfg.mode) + "'; it starts from the origin point "
                "mass");
        }
    } else {
        if (flags.time) {
            throw ConfigError(std::string("--time does not apply to mode '") +
                              mode_name(cfg.mode) + "'");
        }
        if (flags.rate) {
            throw ConfigError(std::string("--rate does not apply to mode '") +
                              mode_name(cfg.mode) + "'");
        }
    }
    if (!sampled && flags.samples) {
        throw ConfigError(std::string("--samples does not apply to mode '") +
                          mode_name(cfg.mode) + "'");
    }

    if (!continuous) {
        if (flags.coin_name && flags.angles) {
            throw ConfigError("give either --coin or --angles, not both");
        }
        bool use_angles = false;
        std::array<double, 4> ang{};
        std::string preset;
        if (flags.angles) {
            use_angles = true;
            ang = *flags.angles;
        } else if (flags.coin_name) {
            preset = *flags.coin_name;
        } else if (file.angles) {
            use_angles = true;
            ang = *file.angles;
        } else {
            preset = file.coin_name.value_or("hadamard");
        }

        Amplitude base_alpha;
        Amplitude base_beta;
        if (use_angles) {
            static constexpr const char* kAngleNames[4] = {
                "delta", "lambda1", "lambda2", "lambda3"};
            for (int i = 0; i < 4; ++i) {
                if (!std::isfinite(ang[i])) {
                    throw ConfigError(std::string("coin angle ") +
                                      kAngleNames[i] + " must be finite");
                }
            }
            if (!(ang[2] > 0.0 && ang[2] < kTwoPi)) {
                throw ConfigError("coin angle lambda2 = " + short_num(ang[2]) +
                                  " is outside the valid range (0, 2*pi)");
            }
            cfg.coin = CoinSpec(ang[0], ang[1], ang[2], ang[3]);
            base_alpha = Amplitude{1.0, 0.0};
            base_beta = Amplitude{0.0, 0.0};
        } else {
            if (preset != "hadamard") {
                throw ConfigError("unknown coin preset '" + preset +
                                  "' (available presets: hadamard)");
            }
            cfg.coin = hadamard_spec();
            base_alpha = Amplitude{kInvSqrt2, 0.0};
            base_beta = Amplitude{0.0, kInvSqrt2};
        }

        const std::optional<std::array<double, 2>> a =
            pick(file.alpha, flags.alpha);
        const std::optional<std::array<double, 2>> b =
            pick(file.beta, flags.beta);
        if (a.has_value() != b.has_value()) {
            throw ConfigError("alpha and beta must be given together");
        }
        if (a) {
            for (const double v : {(*a)[0], (*a)[1], (*b)[0], (*b)[1]}) {
                if (!std::isfinite(v)) {
                    throw ConfigError("alpha and beta must be finite");
                }
            }
            base_alpha = Amplitude{(*a)[0], (*a)[1]};
            base_beta = Amplitude{(*b)[0], (*b)[1]};
        }
        cfg.init = PointMassInitialState{base_alpha, base_beta};
        const double nrm = std::norm(base_alpha) + std::norm(base_beta);
        if (std::abs(nrm - 1.0) > 1e-10) {
            throw ConfigError(
                "initial amplitudes must satisfy |alpha|^2 + |beta|^2 = 1 "
                "within 1e-10; got " +
                short_num(nrm));
        }

        const std::optional<int> st = pick(file.steps, flags.steps);
        if (!st) {
            throw ConfigError(std::string("mode '") + mode_name(cfg.mode) +
                              "' requires a step count (--steps, >= 0)");
        }
        if (*st < 0) {
            throw ConfigError("steps = " + std::to_string(*st) +
                              " must be >= 0");
        }
        cfg.steps = *st;
    } else {
        const std::optional<double> t = pick(file.time, flags.time);
        if (!t) {
            throw ConfigError(std::string("mode '") + mode_name(cfg.mode) +
                              "' requires an evolution time (--time, >= 0)");
        }
        if (!std::isfinite(*t) || *t < 0.0) {
            throw ConfigError("time = " + short_num(*t) +
                              " must be finite and >= 0");
        }
        cfg.time = *t;
        const double r = pick(file.rate, flags.rate).value_or(1.0);
        if (!std::isfinite(r) || r <= 0.0) {
            throw ConfigError("rate = " + short_num(r) +
                              " must be finite and > 0");
        }
        cfg.rate = r;
    }

    if (sampled) {
        const std::optional<long long> m = pick(file.samples, flags.samples);
        if (!m) {
            throw ConfigError(std::string("mode '") + mode_name(cfg.mode) +
                              "' requires a sample count (--samples, >= 1)");
        }
        if (*m < 1) {
            throw ConfigError("samples = " + std::to_string(*m) +
                              " must be >= 1");
        }
        cfg.samples = *m;
    }

    if (cfg.mode == ExperimentMode::kConvergence) {
        const std::optional<std::vector<long long>> grid =
            pick(file.m_grid, flags.m_grid);
        if (grid) cfg.m_grid = *grid;  // contents validated by the study
    }

    cfg.seed = pick(file.seed, flags.seed).value_or(1);

    std::optional<int> w = pick(file.workers, flags.workers);
    if (!w) w = workers_from_env();
    cfg.workers = w.value_or(0);
    if (cfg.workers < 0) {
        throw ConfigError("workers = " + std::to_string(cfg.workers) +
                          " must be >= 0");
    }

    if (sub == Subcommand::kSimulate) {
        const std::string f = pick(file.format, flags.format).value_or("csv");
        if (f == "csv") {
            cfg.format = ArtifactFormat::kCsv;
        } else if (f == "json") {
            cfg.format = ArtifactFormat::kJson;
        } else if (f == "svg") {
            cfg.format = ArtifactFormat::kSvg;
        } else {
            throw ConfigError("format must be one of csv, json, svg; got '" +
                              f + "'");
        }
    }

    const char* default_out = sub == Subcommand::kSimulate ? "simulate"
                              : sub == Subcommand::kCompare ? "compare"
                                                            : "convergence";
    cfg.out = pick(file.out, flags.out).value_or(default_out);
    if (cfg.out.empty()) throw ConfigError("out must be a non-empty path");
    return cfg;
}

std::string ensure_extension(const std::string& path, ArtifactFormat format) {
    const size_t slash = path.find_last_of('/');
    const size_t dot = path.find_last_of('.');
    const bool has_ext =
        dot != std::string::npos && (slash == std::string::npos || dot > slash);
    if (has_ext) return path;
    return path + "." + format_name(format);
}

std::string strip_known_extension(const std::string& path) {
    for (const char* ext : {".csv", ".json", ".svg"}) {
        const size_t n = std::strlen(ext);
        if (path.size() > n && path.compare(path.size() - n, n, ext) == 0) {
            return path.substr(0, path.size() - n);
        }
    }
    return path;
}

void write_artifact(const std::string& path, const std::string& body) {
    write_text_file(path, body);
    std::cout << "wrote " << path << "\n";
}

void note_estimator(const char* label, double wall_time, int workers) {
    std::cerr << label << ": wall time " << short_num(wall_time) << " s, "
              << workers << " worker(s)\n";
}

void warn_variance(bool advisory, double amplification, double noise) {
    if (!advisory) return;
    std::cerr << "warning: weight amplification " << short_num(amplification)
              << " predicts Monte Carlo noise " << short_num(noise)
              << " > 0.05; increase --samples for a usable estimate\n";
}

void warn_overflow(long long overflow_samples) {
    if (overflow_samples <= 0) return;
    std::cerr << "note: " << overflow_samples
              << " sample(s) landed outside the accumulation window and "
                 "were dropped\n";
}

ordered_json complex_json(const Amplitude& a) {
    return ordered_json::array({a.real(), a.imag()});
}

ordered_json amp_vector_json(const std::vector<Amplitude>& v) {
    ordered_json arr = ordered_json::array();
    for (const Amplitude& a : v) arr.push_back(complex_json(a));
    return arr;
}

ordered_json coin_json(const CoinSpec& c) {
    ordered_json j;
    j["delta"] = c.delta;
    j["lambda1"] = c.lambda1;
    j["lambda2"] = c.lambda2;
    j["lambda3"] = c.lambda3;
    return j;
}

ordered_json dist_json(const PositionDistribution& d,
                       const std::vector<double>* std_err) {
    ordered_json j;
    j["x_min"] = d.x_min;
    j["p"] = d.p;
    if (std_err != nullptr) j["std_err"] = *std_err;
    return j;
}

ordered_json parameters_json(const ExperimentConfig& cfg) {
    const bool continuous = is_continuous(cfg.mode);
    const bool sampled = is_sampled(cfg.mode);
    ordered_json j;
    j["mode"] = mode_name(cfg.mode);
    if (continuous) {
        j["rate"] = cfg.rate;
        j["time"] = cfg.time;
    } else {
        j["coin"] = coin_json(cfg.coin);
        j["alpha"] = complex_json(cfg.init.alpha);
        j["beta"] = complex_json(cfg.init.beta);
        j["steps"] = cfg.steps;
    }
    if (sampled) j["samples"] = cfg.samples;
    if (cfg.mode == ExperimentMode::kConvergence) j["m_grid"] = cfg.m_grid;
    if (sampled || cfg.mode == ExperimentMode::kConvergence) {
        j["seed"] = cfg.seed;
        j["workers"] = cfg.workers;
    }
    return j;
}

std::string dump_json(const ordered_json& j) { return j.dump(2) + "\n"; }

void run_discrete_mc(const ExperimentConfig& cfg) {
    const EstimateReport rep = estimate_discrete(
        cfg.coin, cfg.init, cfg.steps, cfg.samples, cfg.seed, cfg.workers);
    note_estimator("discrete_mc", rep.wall_time, rep.workers);
    warn_variance(rep.variance_advisory, rep.amplification,
                  rep.predicted_noise);

    std::string body;
    switch (cfg.format) {
        case ArtifactFormat::kCsv:
            body = csv_estimate(rep);
            break;
        case ArtifactFormat::kJson: {
            ordered_json j;
            j["parameters"] = parameters_json(cfg);
            j["amplification"] = rep.amplification;
            j["predicted_noise"] = rep.predicted_noise;
            j["variance_advisory"] = rep.variance_advisory;
            ordered_json s;
            s["x_min"] = rep.state.x_min();
            s["plus"] = amp_vector_json(rep.state.plus_data());
            s["minus"] = amp_vector_json(rep.state.minus_data());
            s["std_err_plus"] = rep.std_err_plus;
            s["std_err_minus"] = rep.std_err_minus;
            j["state"] = s;
            j["probability"] = dist_json(rep.probability,
                                         &rep.probability_std_err);
            body = dump_json(j);
            break;
        }
        case ArtifactFormat::kSvg: {
            const std::string title = "coined walk estimate, n=" +
                                      std::to_string(cfg.steps) + ", M=" +
                                      std::to_string(cfg.samples);
            body = svg_bar_chart(
                title, {{"estimate", kEstimateColor, &rep.probability}});
            break;
        }
    }
    write_artifact(ensure_extension(cfg.out, cfg.format), body);
}

void run_discrete_exact(const ExperimentConfig& cfg) {
    const bool series = cfg.mode == ExperimentMode::kDiscreteSeries;
    CoinedState state = point_mass_state(cfg.init);
    SeriesTruncation trunc;
    if (series) {
        trunc = SeriesTruncation::tight_for(cfg.coin.lambda2);
        for (int k = 0; k < cfg.steps; ++k) {
            state = step_general_series(state, cfg.coin, trunc);
        }
    } else {
        state = evolve_coined(state, coin_from_euler(cfg.coin), cfg.steps);
    }
    const PositionDistribution d = distribution(state);

    std::string body;
    switch (cfg.format) {
        case ArtifactFormat::kCsv:
            body = csv_distribution(d);
            break;
        case ArtifactFormat::kJson: {
            ordered_json j;
            j["parameters"] = parameters_json(cfg);
            if (series) {
                j["truncation_order"] = trunc.order;
                j["tail_bound"] = trunc.tail_bound(cfg.coin.lambda2);
            }
            j["squared_norm"] = state.squared_norm();
            ordered_json s;
            s["x_min"] = state.x_min();
            s["plus"] = amp_vector_json(state.plus_data());
            s["minus"] = amp_vector_json(state.minus_data());
            j["state"] = s;
            j["probability"] = dist_json(d, nullptr);
            body = dump_json(j);
            break;
        }
        case ArtifactFormat::kSvg: {
            const std::string title =
                std::string("coined walk ") +
                (series ? "series" : "reference") + ", n=" +
                std::to_string(cfg.steps);
            body = svg_bar_chart(title, {{series ? "series" : "reference",
                                          kReferenceColor, &d}});
            break;
        }
    }
    write_artifact(ensure_extension(cfg.out, cfg.format), body);
}

void run_continuous_mc(const ExperimentConfig& cfg) {
    const ScalarEstimateReport rep = estimate_continuous(
        LatticeGenerator(cfg.rate), ScalarState::delta_at_origin(), cfg.time,
        cfg.samples, cfg.seed, cfg.workers);
    note_estimator("continuous_mc", rep.wall_time, rep.workers);
    warn_variance(rep.variance_advisory, rep.amplification,
                  rep.predicted_noise);
    warn_overflow(rep.overflow_samples);

    std::string body;
    switch (cfg.format) {
        case ArtifactFormat::kCsv:
            body = csv_estimate(rep);
            break;
        case ArtifactFormat::kJson: {
            ordered_json j;
            j["parameters"] = parameters_json(cfg);
            j["amplification"] = rep.amplification;
            j["predicted_noise"] = rep.predicted_noise;
            j["variance_advisory"] = rep.variance_advisory;
            j["overflow_samples"] = rep.overflow_samples;
            ordered_json s;
            s["x_min"] = rep.state.x_min();
            s["amp"] = amp_vector_json(rep.state.data());
            s["std_err"] = rep.std_err;
            j["state"] = s;
            j["probability"] = dist_json(rep.probability,
                                         &rep.probability_std_err);
            body = dump_json(j);
            break;
        }
        case ArtifactFormat::kSvg: {
            const std::string title = "continuous walk estimate, t=" +
                                      short_num(cfg.time) + ", M=" +
                                      std::to_string(cfg.samples);
            body = svg_bar_chart(
                title, {{"estimate", kEstimateColor, &rep.probability}});
            break;
        }
    }
    write_artifact(ensure_extension(cfg.out, cfg.format), body);
}

void run_continuous_reference(const ExperimentConfig& cfg) {
    const ScalarState state = evolve_continuous(
        ScalarState::delta_at_origin(), LatticeGenerator(cfg.rate), cfg.time);
    const PositionDistribution d = distribution(state);

    std::string body;
    switch (cfg.format) {
        case ArtifactFormat::kCsv:
            body = csv_distribution(d);
            break;
        case ArtifactFormat::kJson: {
            ordered_json j;
            j["parameters"] = parameters_json(cfg);
            j["squared_norm"] = state.squared_norm();
            ordered_json s;
            s["x_min"] = state.x_min();
            s["amp"] = amp_vector_json(state.data());
            j["state"] = s;
            j["probability"] = dist_json(d, nullptr);
            body = dump_json(j);
            break;
        }
        case ArtifactFormat::kSvg: {
            const std::string title =
                "continuous walk reference, t=" + short_num(cfg.time);
            body = svg_bar_chart(title, {{"reference", kReferenceColor, &d}});
            break;
        }
    }
    write_artifact(ensure_extension(cfg.out, cfg.format), body);
}

void run_compare(const ExperimentConfig& cfg) {
    const EstimateReport rep = estimate_discrete(
        cfg.coin, cfg.init, cfg.steps, cfg.samples, cfg.seed, cfg.workers);
    note_estimator("compare", rep.wall_time, rep.workers);
    warn_variance(rep.variance_advisory, rep.amplification,
                  rep.predicted_noise);

    const CoinedState reference = evolve_coined(
        point_mass_state(cfg.init), coin_from_euler(cfg.coin), cfg.steps);
    const ComparisonReport cmp = amplitude_error(rep.state, reference, true);
    const PositionDistribution ref_dist = distribution(reference);

    const std::string base = strip_known_extension(cfg.out);
    write_artifact(base + ".csv",
                   csv_compare(ref_dist, rep.probability,
                               rep.probability_std_err,
                               rep.probability.x_min));

    ordered_json j;
    j["parameters"] = parameters_json(cfg);
    j["tvd"] = cmp.tvd;
    j["l2_amp_error"] = cmp.l2_amp_error;
    j["aligned_phase"] = cmp.aligned_phase;
    j["mass_estimate"] = cmp.mass_a;
    j["mass_reference"] = cmp.mass_b;
    j["amplification"] = rep.amplification;
    j["predicted_noise"] = rep.predicted_noise;
    j["variance_advisory"] = rep.variance_advisory;
    write_artifact(base + ".json", dump_json(j));

    const std::string title = "coined walk, n=" + std::to_string(cfg.steps) +
                              ": reference vs estimate";
    write_artifact(base + ".svg",
                   svg_bar_chart(title,
                                 {{"reference", kReferenceColor, &ref_dist},
                                  {"estimate", kEstimateColor,
                                   &rep.probability}}));

    std::cout << "tvd = " << format_g17(cmp.tvd) << "\n";
    std::cout << "l2 amplitude error = " << format_g17(cmp.l2_amp_error)
              << "\n";
}

void run_convergence(const ExperimentConfig& cfg) {
    DiscreteRunSpec run_spec;
    run_spec.coin = cfg.coin;
    run_spec.init = cfg.init;
    run_spec.steps = cfg.steps;
    run_spec.seed = cfg.seed;
    run_spec.workers = cfg.workers;
    const ConvergenceStudy study = convergence_study(run_spec, cfg.m_grid);

    const std::string base = strip_known_extension(cfg.out);
    write_artifact(base + ".csv", csv_convergence(study));

    ordered_json j;
    j["parameters"] = parameters_json(cfg);
    ordered_json points = ordered_json::array();
    for (const ConvergencePoint& p : study.points) {
        ordered_json entry;
        entry["samples"] = p.samples;
        entry["tvd"] = p.tvd;
        entry["l2_amp_error"] = p.l2_amp_error;
        entry["slope_fit"] = p.slope_fit;
        points.push_back(entry);
    }
    j["points"] = points;
    j["slope"] = study.slope;
    j["converging"] = study.converging;
    write_artifact(base + ".json", dump_json(j));

    std::cout << "slope = " << format_g17(study.slope) << " ("
              << (study.converging ? "converging" : "not converging")
              << ")\n";
}

void add_common_options(CLI::App* sub, FlagSet& f, bool engine_flags,
                        bool with_samples) {
    sub->add_option("--config", f.config,
                    "JSON config file; explicit flags override its values");
    if (engine_flags) {
        sub->add_option("--mode", f.mode,
                        "engine: discrete_mc (default), discrete_reference, "
                        "discrete_series, continuous_mc, "
                        "continuous_reference");
        sub->add_option("--time", f.time,
                        "evolution time t >= 0 (continuous modes)");
        sub->add_option("--rate", f.rate,
                        "generator rate lambda > 0 (continuous modes; "
                        "default 1)");
        sub->add_option("--format", f.format,
                        "artifact format: csv (default), json, svg");
    }
    sub->add_option("--coin", f.coin,
                    "coin preset: hadamard (also sets alpha,beta = "
                    "1/sqrt2, i/sqrt2)");
    sub->add_option("--angles", f.angles,
                    "Euler coin angles delta,lambda1,lambda2,lambda3 "
                    "(lambda2 in (0, 2*pi))");
    sub->add_option("--alpha", f.alpha, "starting +1 coin amplitude re,im");
    sub->add_option("--beta", f.beta, "starting -1 coin amplitude re,im");
    sub->add_option("--steps", f.steps, "coined-walk step count n >= 0");
    if (with_samples) {
        sub->add_option("--samples", f.samples,
                        "Monte Carlo sample count M >= 1");
    }
    sub->add_option("--seed", f.seed, "base RNG seed (default 1)");
    sub->add_option("--workers", f.workers,
                    "worker threads; 0 = hardware count (default; the "
                    "QWALK_WORKERS environment variable overrides)");
    sub->add_option("--out", f.out,
                    "artifact path (simulate) or basename (compare, "
                    "convergence)");
}

}  // namespace

void run(const ExperimentConfig& config) {
    switch (config.mode) {
        case ExperimentMode::kDiscreteMc:
            run_discrete_mc(config);
            break;
        case ExperimentMode::kDiscreteReference:
        case ExperimentMode::kDiscreteSeries:
            run_discrete_exact(config);
            break;
        case ExperimentMode::kContinuousMc:
            run_continuous_mc(config);
            break;
        case ExperimentMode::kContinuousReference:
            run_continuous_reference(config);
            break;
        case ExperimentMode::kCompare:
            run_compare(config);
            break;
        case ExperimentMode::kConvergence:
            run_convergence(config);
            break;
    }
}

int run_cli(int argc, const char* const* argv) {
    CLI::App app{
        "quantum walks on the integer line: exact unitary references, "
        "deterministic jump-series oracles, and a seeded Monte Carlo "
        "estimator"};
    app.require_subcommand(1);

    FlagSet f;
    CLI::App* sim = app.add_subcommand(
        "simulate", "run one engine and write its distribution artifact");
    CLI::App* cmp = app.add_subcommand(
        "compare",
        "estimate and exactly evolve the same coined walk, then report "
        "their distance (csv + json + svg)");
    CLI::App* con = app.add_subcommand(
        "convergence",
        "sweep Monte Carlo sample counts and fit the error slope "
        "(csv + json)");
    add_common_options(sim, f, /*engine_flags=*/true, /*with_samples=*/true);
    add_common_options(cmp, f, /*engine_flags=*/false, /*with_samples=*/true);
    add_common_options(con, f, /*engine_flags=*/false, /*with_samples=*/false);
    (void)con;  // selection below defaults to convergence

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        const Subcommand sub = app.got_subcommand(sim)
                                   ? Subcommand::kSimulate
                               : app.got_subcommand(cmp)
                                   ? Subcommand::kCompare
                                   : Subcommand::kConvergence;
        Draft file;
        if (f.config) file = load_config_file(*f.config);
        const Draft flags = draft_from_flags(f);
        const ExperimentConfig cfg = materialize(file, flags, sub);
        run(cfg);
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 4;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace qwalk
