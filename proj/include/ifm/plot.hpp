// Copyright 2026 The ifm Authors
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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ifm/experiment.hpp"
#include "ifm/tables.hpp"
#include "ifm/theory.hpp"

namespace ifm::plot {

enum class SeriesStyle { bars, points, line };

struct Series {
    std::string name;
    /// CSS class on every element of the series ("theory", "sim", "corr").
    std::string css_class;
    SeriesStyle style = SeriesStyle::points;
    std::vector<std::optional<double>> values;
    /// Symmetric error bar per value; empty for none.
    std::vector<double> errors;
};

/// Categorical chart in percent.
struct Chart {
    std::string title;
    std::string x_label;
    std::string y_label = "probability (%)";
    std::vector<std::string> categories;
    std::vector<Series> series;
};

namespace detail {

inline std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

inline std::string escape(const std::string &text) {
    std::string out;
    for (char ch : text) {
        switch (ch) {
        case '&':
            out += "&amp;";
            break;
        case '<':
            out += "&lt;";
            break;
        case '>':
            out += "&gt;";
            break;
        case '"':
            out += "&quot;";
            break;
        default:
            out += ch;
        }
    }
    return out;
}

inline const char *color_for(const std::string &css_class) {
    if (css_class == "theory") {
        return "#222222";
    }
    if (css_class == "corr") {
        return "#d95f02";
    }
    return "#1b9e77";
}

} // namespace detail

/// Renders `chart` as a standalone SVG document. Output depends only on the
/// chart contents.
inline std::string render_svg(const Chart &chart) {
    if (chart.categories.empty() || chart.series.empty()) {
        throw std::invalid_argument("cannot plot an empty chart");
    }
    double top = 100.0;
    bool any_value = false;
    for (const Series &s : chart.series) {
        if (s.values.size() != chart.categories.size() ||
            (!s.errors.empty() && s.errors.size() != s.values.size())) {
            throw std::invalid_argument("series '" + s.name + "' does not match the categories");
        }
        for (std::size_t i = 0; i < s.values.size(); ++i) {
            if (s.values[i]) {
                any_value = true;
                const double err = s.errors.empty() ? 0.0 : s.errors[i];
                top = std::max(top, *s.values[i] + err);
            }
        }
    }
    if (!any_value) {
        throw std::invalid_argument("cannot plot a chart without values");
    }
    top = std::ceil(top / 10.0) * 10.0;

    const double width = 720;
    const double height = 420;
    const double left = 70;
    const double right = 170;
    const double upper = 40;
    const double lower = 60;
    const double plot_w = width - left - right;
    const double plot_h = height - upper - lower;
    const double slot = plot_w / static_cast<double>(chart.categories.size());
    auto y_of = [&](double v) { return upper + plot_h * (1.0 - v / top); };
    auto x_of = [&](std::size_t i) { return left + slot * (static_cast<double>(i) + 0.5); };

    std::size_t bar_series = 0;
    for (const Series &s : chart.series) {
        bar_series += s.style == SeriesStyle::bars ? 1 : 0;
    }
    const double bar_w = bar_series ? slot * 0.7 / static_cast<double>(bar_series) : 0.0;

    using detail::num;
    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\""
        << num(height) << "\" viewBox=\"0 0 " << num(width) << ' ' << num(height) << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<text x=\"" << num(left) << "\" y=\"24\" font-family=\"sans-serif\" font-size=\"15\">"
        << detail::escape(chart.title) << "</text>\n";

    for (double tick = 0.0; tick <= top + 1e-9; tick += top / 5.0) {
        svg << "<line class=\"grid\" x1=\"" << num(left) << "\" y1=\"" << num(y_of(tick))
            << "\" x2=\"" << num(left + plot_w) << "\" y2=\"" << num(y_of(tick))
            << "\" stroke=\"#dddddd\"/>\n";
        svg << "<text x=\"" << num(left - 8) << "\" y=\"" << num(y_of(tick) + 4)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << num(tick)
            << "</text>\n";
    }
    svg << "<line class=\"axis\" x1=\"" << num(left) << "\" y1=\"" << num(upper) << "\" x2=\""
        << num(left) << "\" y2=\"" << num(upper + plot_h) << "\" stroke=\"black\"/>\n";
    svg << "<line class=\"axis\" x1=\"" << num(left) << "\" y1=\"" << num(upper + plot_h)
        << "\" x2=\"" << num(left + plot_w) << "\" y2=\"" << num(upper + plot_h)
        << "\" stroke=\"black\"/>\n";
    for (std::size_t i = 0; i < chart.categories.size(); ++i) {
        svg << "<text x=\"" << num(x_of(i)) << "\" y=\"" << num(upper + plot_h + 18)
            << "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"11\">"
            << detail::escape(chart.categories[i]) << "</text>\n";
    }
    svg << "<text x=\"" << num(left + plot_w / 2) << "\" y=\"" << num(height - 14)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
        << detail::escape(chart.x_label) << "</text>\n";
    svg << "<text transform=\"translate(18 " << num(upper + plot_h / 2)
        << ") rotate(-90)\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
        << detail::escape(chart.y_label) << "</text>\n";

    std::size_t bar_index = 0;
    for (std::size_t si = 0; si < chart.series.size(); ++si) {
        const Series &s = chart.series[si];
        const char *color = detail::color_for(s.css_class);
        double offset = 0.0;
        if (s.style == SeriesStyle::bars) {
            offset = -slot * 0.35 + bar_w * (static_cast<double>(bar_index) + 0.5);
            ++bar_index;
        }
        std::ostringstream polyline;
        for (std::size_t i = 0; i < s.values.size(); ++i) {
            if (!s.values[i]) {
                continue;
            }
            const double v = *s.values[i];
            const double x = x_of(i) + offset;
            switch (s.style) {
            case SeriesStyle::bars:
                svg << "<rect class=\"bar " << s.css_class << "\" x=\"" << num(x - bar_w / 2)
                    << "\" y=\"" << num(y_of(v)) << "\" width=\"" << num(bar_w) << "\" height=\""
                    << num(y_of(0) - y_of(v)) << "\" fill=\"" << color
                    << "\" fill-opacity=\"0.6\"/>\n";
                break;
            case SeriesStyle::line:
                polyline << (polyline.tellp() > 0 ? " " : "") << num(x) << ',' << num(y_of(v));
                [[fallthrough]];
            case SeriesStyle::points:
                svg << "<circle class=\"point " << s.css_class << "\" cx=\"" << num(x)
                    << "\" cy=\"" << num(y_of(v)) << "\" r=\"4\" fill=\"" << color << "\"/>\n";
                break;
            }
            if (!s.errors.empty() && s.errors[i] > 0.0) {
                const double e = s.errors[i];
                svg << "<path class=\"errbar " << s.css_class << "\" d=\"M" << num(x - 5) << ','
                    << num(y_of(v + e)) << " H" << num(x + 5) << " M" << num(x) << ','
                    << num(y_of(v + e)) << " V" << num(y_of(std::max(0.0, v - e))) << " M"
                    << num(x - 5) << ',' << num(y_of(std::max(0.0, v - e))) << " H"
                    << num(x + 5) << "\" stroke=\"black\" fill=\"none\"/>\n";
            }
        }
        if (s.style == SeriesStyle::line && polyline.tellp() > 0) {
            svg << "<polyline class=\"line " << s.css_class << "\" points=\"" << polyline.str()
                << "\" fill=\"none\" stroke=\"" << color << "\"/>\n";
        }
        const double ly = upper + 16.0 * static_cast<double>(si);
        svg << "<rect x=\"" << num(left + plot_w + 16) << "\" y=\"" << num(ly) << "\" width=\"10\""
            << " height=\"10\" fill=\"" << color << "\"/>\n";
        svg << "<text x=\"" << num(left + plot_w + 32) << "\" y=\"" << num(ly + 9)
            << "\" font-family=\"sans-serif\" font-size=\"11\">" << detail::escape(s.name)
            << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

/// Outcome bars (mean +- std) with noiseless theory points.
inline Chart chart_from_result(const ExperimentResult &result) {
    if (result.outcomes.empty()) {
        throw std::invalid_argument("cannot plot an empty experiment result");
    }
    Chart chart;
    chart.title = result.label;
    chart.x_label = "outcome (cbit 0 first)";
    Series sim{"simulated", "sim", SeriesStyle::bars, {}, {}};
    Series theory{"theory", "theory", SeriesStyle::points, {}, {}};
    std::map<std::string, OutcomeStats> rows;
    for (const auto &[o, s] : result.outcomes) {
        rows[format_outcome(o, result.num_cbits)] = s;
    }
    for (const auto &[text, s] : rows) {
        chart.categories.push_back(text);
        sim.values.emplace_back(s.mean_pct);
        sim.errors.push_back(s.std_pct);
        theory.values.emplace_back(s.theory_pct);
    }
    chart.series = {sim, theory};
    if (result.corrected) {
        Series corr{"corrected", "corr", SeriesStyle::points, {}, {}};
        for (const auto &[text, s] : rows) {
            const bool zero = text.find('1') == std::string::npos;
            corr.values.push_back(zero ? std::optional<double>(result.corrected->value)
                                       : std::nullopt);
            corr.errors.push_back(zero ? result.corrected->sigma : 0.0);
        }
        chart.series.push_back(corr);
    }
    return chart;
}

/// One category per table cell: theory points, simulated points with error
/// bars, and corrected points when present.
inline Chart chart_from_table(const TableReport &report) {
    if (report.rows.empty()) {
        throw std::invalid_argument("cannot plot an empty table");
    }
    Chart chart;
    chart.title = "Table " + std::to_string(report.id) + ": " + report.title;
    chart.x_label = report.id == 1 ? "circuit / outcome" : "iterations";
    Series theory{"theory", "theory", SeriesStyle::points, {}, {}};
    Series sim{"simulated", "sim", SeriesStyle::points, {}, {}};
    Series corr{"corrected", "corr", SeriesStyle::points, {}, {}};
    bool have_sim = false;
    bool have_corr = false;
    for (const TableRow &row : report.rows) {
        for (const TableCell &cell : row.cells) {
            chart.categories.push_back(report.id == 1 ? row.label + " " + cell.column : row.label);
            theory.values.emplace_back(cell.theory_pct);
            sim.values.push_back(cell.mean_pct);
            sim.errors.push_back(cell.std_pct.value_or(0.0));
            corr.values.push_back(cell.corrected_pct);
            corr.errors.push_back(cell.corrected_std_pct.value_or(0.0));
            have_sim = have_sim || cell.mean_pct.has_value();
            have_corr = have_corr || cell.corrected_pct.has_value();
        }
    }
    chart.series.push_back(theory);
    if (have_sim) {
        chart.series.push_back(sim);
    }
    if (have_corr) {
        chart.series.push_back(corr);
    }
    return chart;
}

/// Closed-form success probability for N = n_min..n_max as a line.
inline Chart chart_theory_sweep(std::size_t n_min, std::size_t n_max) {
    if (n_min < 1 || n_max < n_min) {
        throw std::invalid_argument("sweep range must satisfy 1 <= n_min <= n_max");
    }
    Chart chart;
    chart.title = "Counterfactual success probability vs iterations";
    chart.x_label = "N";
    Series theory{"(cos^2(pi/2N))^N", "theory", SeriesStyle::line, {}, {}};
    for (std::size_t n = n_min; n <= n_max; ++n) {
        chart.categories.push_back(std::to_string(n));
        theory.values.emplace_back(100.0 * theoretical_success(n));
    }
    chart.series.push_back(theory);
    return chart;
}

inline void write_svg(const std::filesystem::path &path, const std::string &svg) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    out << svg;
    if (!out) {
        throw std::runtime_error("failed writing " + path.string());
    }
}

} // namespace ifm::plot
