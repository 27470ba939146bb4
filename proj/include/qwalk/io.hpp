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

#include <string>
#include <vector>

#include "qwalk/analysis.hpp"
#include "qwalk/estimate.hpp"
#include "qwalk/state.hpp"

namespace qwalk {

// Fixed 17-significant-digit decimal formatting (printf %.17g): enough
// digits to round-trip any double, and the single number formatter behind
// every CSV cell, so output bytes are a pure function of the values.
std::string format_g17(double v);

// Writes `body` to `path`, throwing IoError on any failure.
void write_text_file(const std::string& path, const std::string& body);

// CSV tables. All emit a header row, one row per lattice site, and \n
// line endings.
std::string csv_distribution(const PositionDistribution& d);
std::string csv_estimate(const EstimateReport& r);
std::string csv_estimate(const ScalarEstimateReport& r);
std::string csv_compare(const PositionDistribution& reference,
                        const PositionDistribution& mc,
                        const std::vector<double>& mc_se, int se_x_min);
std::string csv_convergence(const ConvergenceStudy& s);

// One named series of a bar chart.
struct ChartSeries {
    std::string label;
    std::string color;  // CSS color for the bars
    const PositionDistribution* dist = nullptr;
};

// Self-contained SVG: grouped per-site bars for up to a few series, with
// axes, ticks, and a legend. Windows are trimmed to the union of
// non-negligible support so wide sparse estimates stay readable.
std::string svg_bar_chart(const std::string& title,
                          const std::vector<ChartSeries>& series);

}  // namespace qwalk
