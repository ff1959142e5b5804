// Copyright 2026 The BSSC Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Self-contained SVG chart of error probability against the number of users.

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "bssc/sim.hpp"

namespace bssc {

struct PlotOptions {
    int width = 800;
    int height = 600;
    bool per_trial = false;  // plot per-trial instead of per-user probability
};

inline std::string render_svg(const std::vector<SweepRow>& rows, const PlotOptions& opt = {}) {
    using Key = std::tuple<std::string, std::string, int>;
    std::map<Key, std::vector<std::pair<int, double>>> series;
    double ymin = 1.0;
    int xmin = 1 << 30;
    int xmax = 0;
    for (const SweepRow& r : rows) {
        if (!r.stats) continue;
        const double p = opt.per_trial ? r.stats->per_trial_p : r.stats->per_user_p;
        series[{std::string(to_string(r.config.codebook)), std::string(to_string(r.config.decoder)), r.config.m}]
            .emplace_back(r.config.users, p);
        if (p > 0.0) ymin = std::min(ymin, p);
        xmin = std::min(xmin, r.config.users);
        xmax = std::max(xmax, r.config.users);
    }
    if (series.empty()) {
        xmin = 1;
        xmax = 2;
    }
    if (xmax == xmin) ++xmax;
    // zeros are drawn on the floor, one decade below the smallest positive value
    const int lo_dec = static_cast<int>(std::floor(std::log10(ymin))) - 1;
    const double floor_p = std::pow(10.0, lo_dec);

    const double left = 80, right = opt.width - 200.0, top = 40, bottom = opt.height - 60.0;
    auto px = [&](double x) { return left + (x - xmin) / (xmax - xmin) * (right - left); };
    auto py = [&](double p) {
        const double l = std::log10(std::max(p, floor_p));
        return bottom - (l - lo_dec) / (0.0 - lo_dec) * (bottom - top);
    };

    std::string svg = fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\" "
        "font-family=\"sans-serif\" font-size=\"12\">\n<rect width=\"{0}\" height=\"{1}\" fill=\"white\"/>\n",
        opt.width, opt.height);
    svg += fmt::format("<line x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\" stroke=\"black\"/>\n", left, bottom, right);
    svg += fmt::format("<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\" stroke=\"black\"/>\n", left, top, bottom);
    for (int d = lo_dec; d <= 0; ++d) {
        const double y = py(std::pow(10.0, d));
        svg += fmt::format("<line x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\" stroke=\"#ddd\"/>\n", left, y, right);
        svg += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"end\">1e{}</text>\n", left - 6, y + 4, d);
    }
    for (int x = xmin; x <= xmax; ++x)
        svg += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n", px(x), bottom + 18, x);
    svg += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">active users L</text>\n", (left + right) / 2,
                       bottom + 40);
    svg += fmt::format(
        "<text x=\"20\" y=\"{}\" text-anchor=\"middle\" transform=\"rotate(-90 20 {})\">{} error probability</text>\n",
        (top + bottom) / 2, (top + bottom) / 2, opt.per_trial ? "per-trial" : "per-user");

    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf"};
    int k = 0;
    for (auto& [key, pts] : series) {
        std::sort(pts.begin(), pts.end());
        const char* color = palette[k % 8];
        std::string poly;
        for (const auto& [x, p] : pts) poly += fmt::format("{:.2f},{:.2f} ", px(x), py(p));
        svg += fmt::format("<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"2\" points=\"{}\"/>\n", color, poly);
        for (const auto& [x, p] : pts)
            svg += fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"3\" fill=\"{}\"/>\n", px(x), py(p), color);
        const double ly = top + 18.0 * k;
        svg += fmt::format("<line x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\" stroke=\"{3}\" stroke-width=\"2\"/>\n",
                           right + 15, ly, right + 35, color);
        svg += fmt::format("<text x=\"{}\" y=\"{}\">{} / {} / m={}</text>\n", right + 40, ly + 4, std::get<0>(key),
                           std::get<1>(key), std::get<2>(key));
        ++k;
    }
    svg += "</svg>\n";
    return svg;
}

}  // namespace bssc
