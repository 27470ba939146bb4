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

#include "qwalk/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "qwalk/errors.hpp"

namespace qwalk {

namespace {

std::string format_fixed2(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string format_tick(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

}  // namespace

std::string format_g17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_text_file(const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out.is_open())
        throw IoError("cannot open " + path + " for writing");
    out.write(body.data(), static_cast<std::streamsize>(body.size()));
    out.flush();
    if (!out.good()) throw IoError("failed while writing " + path);
}

std::string csv_distribution(const PositionDistribution& d) {
    std::string out = "x,probability\n";
    for (size_t i = 0; i < d.p.size(); ++i) {
        out += std::to_string(d.x_min + static_cast<int>(i));
        out += ',';
        out += format_g17(d.p[i]);
        out += '\n';
    }
    return out;
}

std::string csv_estimate(const EstimateReport& r) {
    std::string out =
        "x,re_plus,im_plus,re_minus,im_minus,se_plus,se_minus,probability\n";
    for (int x = r.state.x_min(); x <= r.state.x_max(); ++x) {
        const size_t i = static_cast<size_t>(x - r.state.x_min());
        out += std::to_string(x);
        out += ',';
        out += format_g17(r.state.plus(x).real());
        out += ',';
        out += format_g17(r.state.plus(x).imag());
        out += ',';
        out += format_g17(r.state.minus(x).real());
        out += ',';
        out += format_g17(r.state.minus(x).imag());
        out += ',';
        out += format_g17(r.std_err_plus[i]);
        out += ',';
        out += format_g17(r.std_err_minus[i]);
        out += ',';
        out += format_g17(r.probability.p[i]);
        out += '\n';
    }
    return out;
}

std::string csv_estimate(const ScalarEstimateReport& r) {
    std::string out = "x,re,im,se,probability\n";
    for (int x = r.state.x_min(); x <= r.state.x_max(); ++x) {
        const size_t i = static_cast<size_t>(x - r.state.x_min());
        out += std::to_string(x);
        out += ',';
        out += format_g17(r.state.at(x).real());
        out += ',';
        out += format_g17(r.state.at(x).imag());
        out += ',';
        out += format_g17(r.std_err[i]);
        out += ',';
        out += format_g17(r.probability.p[i]);
        out += '\n';
    }
    return out;
}

std::string csv_compare(const PositionDistribution& reference,
                        const PositionDistribution& mc,
                        const std::vector<double>& mc_se, int se_x_min) {
    const int lo = std::min(reference.x_min, mc.x_min);
    const int hi = std::max(reference.x_max(), mc.x_max());
    std::string out = "x,p_reference,p_mc,se\n";
    for (int x = lo; x <= hi; ++x) {
        const int j = x - se_x_min;
        const double se =
            (j >= 0 && j < static_cast<int>(mc_se.size())) ? mc_se[j] : 0.0;
        out += std::to_string(x);
        out += ',';
        out += format_g17(reference.at(x));
        out += ',';
        out += format_g17(mc.at(x));
        out += ',';
        out += format_g17(se);
        out += '\n';
    }
    return out;
}

std::string csv_convergence(const ConvergenceStudy& s) {
    std::string out = "samples,tvd,l2_amp_error,slope_fit\n";
    for (const ConvergencePoint& p : s.points) {
        out += std::to_string(p.samples);
        out += ',';
        out += format_g17(p.tvd);
        out += ',';
        out += format_g17(p.l2_amp_error);
        out += ',';
        out += format_g17(p.slope_fit);
        out += '\n';
    }
    return out;
}

std::string svg_bar_chart(const std::string& title,
                          const std::vector<ChartSeries>& series) {
    // Union support, trimmed to sites any series actually occupies.
    constexpr double kFloor = 1e-12;
    int lo = 0, hi = 0;
    bool any = false;
    for (const ChartSeries& s : series) {
        if (s.dist == nullptr) continue;
        for (size_t i = 0; i < s.dist->p.size(); ++i) {
            if (s.dist->p[i] <= kFloor) continue;
            const int x = s.dist->x_min + static_cast<int>(i);
            if (!any) {
                lo = hi = x;
                any = true;
            } else {
                lo = std::min(lo, x);
                hi = std::max(hi, x);
            }
        }
    }
    double maxp = 0.0;
    for (const ChartSeries& s : series) {
        if (s.dist == nullptr) continue;
        for (int x = lo; x <= hi; ++x) maxp = std::max(maxp, s.dist->at(x));
    }
    if (maxp <= 0.0) maxp = 1.0;

    const double width = 860.0, height = 440.0;
    const double ml = 70.0, mr = 20.0, mt = 50.0, mb = 50.0;
    const double plot_w = width - ml - mr;
    const double plot_h = height - mt - mb;
    const int nsites = hi - lo + 1;
    const int nseries = static_cast<int>(series.size());
    const double group_w = plot_w / nsites;
    const double bar_w = group_w * 0.8 / std::max(nseries, 1);

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"860\" "
           "height=\"440\" viewBox=\"0 0 860 440\">\n";
    svg += "<rect width=\"860\" height=\"440\" fill=\"#ffffff\"/>\n";
    svg += "<text x=\"430\" y=\"28\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"16\" fill=\"#222222\">" +
           title + "</text>\n";

    // Horizontal gridlines and y tick labels.
    for (int t = 0; t <= 4; ++t) {
        const double frac = t / 4.0;
        const double y = mt + plot_h * (1.0 - frac);
        svg += "<line x1=\"" + format_fixed2(ml) + "\" y1=\"" +
               format_fixed2(y) + "\" x2=\"" + format_fixed2(ml + plot_w) +
               "\" y2=\"" + format_fixed2(y) +
               "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        svg += "<text x=\"" + format_fixed2(ml - 8) + "\" y=\"" +
               format_fixed2(y + 4) +
               "\" text-anchor=\"end\" font-family=\"sans-serif\" "
               "font-size=\"11\" fill=\"#444444\">" +
               format_tick(maxp * frac) + "</text>\n";
    }

    // Bars.
    for (int s = 0; s < nseries; ++s) {
        if (series[static_cast<size_t>(s)].dist == nullptr) continue;
        const PositionDistribution& d = *series[static_cast<size_t>(s)].dist;
        for (int i = 0; i < nsites; ++i) {
            const double p = d.at(lo + i);
            if (p <= 0.0) continue;
            const double h = p / maxp * plot_h;
            const double bx = ml + i * group_w + group_w * 0.1 + s * bar_w;
            const double by = mt + plot_h - h;
            svg += "<rect x=\"" + format_fixed2(bx) + "\" y=\"" +
                   format_fixed2(by) + "\" width=\"" + format_fixed2(bar_w) +
                   "\" height=\"" + format_fixed2(h) + "\" fill=\"" +
                   series[static_cast<size_t>(s)].color + "\"/>\n";
        }
    }

    // x axis, tick labels every few sites.
    svg += "<line x1=\"" + format_fixed2(ml) + "\" y1=\"" +
           format_fixed2(mt + plot_h) + "\" x2=\"" + format_fixed2(ml + plot_w) +
           "\" y2=\"" + format_fixed2(mt + plot_h) +
           "\" stroke=\"#222222\" stroke-width=\"1\"/>\n";
    const int step = std::max(1, (nsites + 15) / 16);
    for (int i = 0; i < nsites; i += step) {
        const double cx = ml + i * group_w + group_w * 0.5;
        svg += "<text x=\"" + format_fixed2(cx) + "\" y=\"" +
               format_fixed2(mt + plot_h + 18) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
               "font-size=\"11\" fill=\"#444444\">" +
               std::to_string(lo + i) + "</text>\n";
    }
    svg += "<text x=\"" + format_fixed2(ml + plot_w / 2) + "\" y=\"" +
           format_fixed2(height - 10) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"12\" fill=\"#222222\">site</text>\n";
    svg += "<text x=\"16\" y=\"" + format_fixed2(mt + plot_h / 2) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"12\" fill=\"#222222\" transform=\"rotate(-90 16 " +
           format_fixed2(mt + plot_h / 2) + ")\">probability</text>\n";

    // Legend, top right.
    double ly = mt + 4;
    for (const ChartSeries& s : series) {
        const double lx = ml + plot_w - 170;
        svg += "<rect x=\"" + format_fixed2(lx) + "\" y=\"" +
               format_fixed2(ly) + "\" width=\"12\" height=\"12\" fill=\"" +
               s.color + "\"/>\n";
        svg += "<text x=\"" + format_fixed2(lx + 18) + "\" y=\"" +
               format_fixed2(ly + 10) +
               "\" font-family=\"sans-serif\" font-size=\"12\" "
               "fill=\"#222222\">" +
               s.label + "</text>\n";
        ly += 18;
    }

    svg += "</svg>\n";
    return svg;
}

}  // namespace qwalk
