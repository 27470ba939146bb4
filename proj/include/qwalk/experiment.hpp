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
#include <string>
#include <vector>

#include "qwalk/coin.hpp"
#include "qwalk/state.hpp"

namespace qwalk {

// Everything a single tool invocation can do. The first five are "simulate"
// engines (one artifact each); compare and convergence are composite runs
// with their own subcommands and fixed artifact sets.
enum class ExperimentMode {
    kDiscreteMc,           // Monte Carlo estimate of the coined walk
    kDiscreteReference,    // exact matrix evolution of the coined walk
    kDiscreteSeries,       // coined walk via the truncated jump series
    kContinuousMc,         // Monte Carlo estimate of e^{i lambda P t}
    kContinuousReference,  // truncated Taylor evolution of e^{i lambda P t}
    kCompare,              // discrete Monte Carlo vs exact reference
    kConvergence,          // Monte Carlo error slope over a sample grid
};

// Spelled names used by the CLI, config files, and reports
// ("discrete_mc", ..., "compare", "convergence").
const char* mode_name(ExperimentMode mode);

// Inverse of mode_name; throws ConfigError naming the valid set.
ExperimentMode mode_from_name(const std::string& name);

enum class ArtifactFormat { kCsv, kJson, kSvg };

const char* format_name(ArtifactFormat format);

// A fully validated run description. The CLI assembles one from defaults,
// a JSON config file, flags, and the QWALK_WORKERS environment variable
// (later sources win); run() consumes it. Direct library callers can fill
// one in by hand; engine-level preconditions are re-checked downstream.
struct ExperimentConfig {
    ExperimentMode mode = ExperimentMode::kDiscreteMc;

    // Discrete modes. The CLI defaults to the hadamard preset, which pairs
    // the Hadamard coin angles with the symmetric start
    // (alpha, beta) = (1/sqrt2, i/sqrt2).
    CoinSpec coin;
    PointMassInitialState init;
    int steps = 0;

    // Continuous modes: generator rate and evolution time. The initial
    // state is the point mass at the origin.
    double rate = 1.0;
    double time = 0.0;

    // Monte Carlo modes.
    long long samples = 0;
    uint64_t seed = 1;
    int workers = 0;  // 0 = hardware thread count; result is independent

    // Convergence mode: strictly increasing sample counts (>= 3 of them).
    std::vector<long long> m_grid{10000, 100000, 1000000, 10000000};

    // Artifact placement: a file path for simulate (extension appended if
    // missing), a basename for compare (.csv/.json/.svg) and convergence
    // (.csv/.json).
    std::string out;
    ArtifactFormat format = ArtifactFormat::kCsv;  // simulate only
};

// Executes the run and writes its artifacts. Progress notes, variance
// warnings, and wall times go to stderr; deterministic result lines
// ("wrote <path>", "tvd = ...") go to stdout. Throws the usual error
// hierarchy: ConfigError for bad parameters, IoError for artifact I/O,
// engine errors for the rest.
void run(const ExperimentConfig& config);

// Full command-line front end: subcommands simulate / compare /
// convergence, --config JSON defaults overridden by flags, QWALK_WORKERS
// fallback for --workers. Returns the process exit code: 0 success (a
// variance advisory still exits 0, with a warning on stderr), 2 config or
// usage errors, 3 engine errors, 4 artifact I/O failures.
int run_cli(int argc, const char* const* argv);

}  // namespace qwalk
