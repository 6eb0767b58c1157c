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

#include <cstddef>
#include <cstdio>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ifm/builders.hpp"
#include "ifm/exact.hpp"
#include "ifm/experiment.hpp"
#include "ifm/readout.hpp"
#include "ifm/theory.hpp"

namespace ifm {

struct TableCell {
    std::string column;
    double theory_pct = 0.0;
    std::optional<double> mean_pct;
    std::optional<double> std_pct;
    std::optional<double> corrected_pct;
    std::optional<double> corrected_std_pct;
};

struct TableRow {
    std::string label;
    std::vector<TableCell> cells;
};

/// Theory and simulated percentages for one of the three experiment tables:
///   1 - bomb tester and dud, all four two-bit outcomes;
///   2 - counterfactual all-zero success, N = 2..4;
///   3 - counterfactual all-zero success, N = 5..9, uncorrected and corrected.
struct TableReport {
    int id = 0;
    std::string title;
    std::vector<TableRow> rows;
    std::vector<std::string> notes;
    std::optional<RunSchedule> schedule;
    std::string noise;
};

namespace detail {

inline TableCell simulated_cell(std::string column, double theory_pct,
                                const std::optional<ExperimentResult> &run, Outcome outcome) {
    TableCell cell{std::move(column), theory_pct, {}, {}, {}, {}};
    if (run) {
        const OutcomeStats s = run->stats(outcome);
        cell.mean_pct = s.mean_pct;
        cell.std_pct = s.std_pct;
        if (outcome == 0 && run->corrected) {
            cell.corrected_pct = run->corrected->value;
            cell.corrected_std_pct = run->corrected->sigma;
        }
    }
    return cell;
}

} // namespace detail

/**
 * Builds the requested table. Theory values come from the exact engine and
 * the closed-form success law; with a schedule each circuit is also sampled
 * under `noise` (noiseless when null). Table 3 runs with calibration.
 */
inline TableReport reproduce_table(int id, const ReadoutErrorModel *noise,
                                   const std::optional<RunSchedule> &schedule,
                                   const std::string &noise_label = {}) {
    TableReport report;
    report.id = id;
    report.schedule = schedule;
    report.noise = noise && noise_label.empty() ? std::string("custom readout model") : noise_label;
    auto run = [&](const Circuit &c, bool calibrate,
                   ExperimentMetadata meta) -> std::optional<ExperimentResult> {
        if (!schedule) {
            return std::nullopt;
        }
        meta.noise = report.noise;
        ExperimentResult r = run_experiment(c, *schedule, noise, calibrate, meta);
        for (const std::string &note : r.notes) {
            report.notes.push_back(c.label() + ": " + note);
        }
        return r;
    };

    switch (id) {
    case 1: {
        report.title = "Bomb tester and dud: outcome probabilities (%), c0 c1";
        for (bool live : {true, false}) {
            const Circuit c = build_bomb_tester(live);
            const OutcomeDistribution exact = exact_distribution(c);
            const auto sim = run(c, false, {std::string(live ? "bomb" : "dud"), {}, {}, {}});
            TableRow row{live ? "bomb" : "dud", {}};
            for (const char *col : {"00", "10", "01", "11"}) {
                row.cells.push_back(detail::simulated_cell(col, 100.0 * exact.probability(col), sim,
                                                           parse_outcome(col)));
            }
            report.rows.push_back(std::move(row));
        }
        break;
    }
    case 2:
    case 3: {
        report.title = id == 2 ? "Counterfactual computation, all-zero outcome (%), N = 2..4"
                               : "Counterfactual computation, all-zero outcome (%), N = 5..9";
        const std::size_t lo = id == 2 ? 2 : 5;
        const std::size_t hi = id == 2 ? 4 : 9;
        for (std::size_t n = lo; n <= hi; ++n) {
            const Circuit c = build_jozsa_ancilla({n, 1});
            const double theory = 100.0 * theoretical_success(n);
            const auto sim = run(c, id == 3, {"jozsa-anc", n, 1, {}});
            TableRow row{"N=" + std::to_string(n), {}};
            row.cells.push_back(detail::simulated_cell("all-zero", theory, sim, Outcome{0}));
            report.rows.push_back(std::move(row));
        }
        break;
    }
    default:
        throw std::invalid_argument("table id must be 1, 2 or 3");
    }
    return report;
}

/// Fixed-width text rendering, one decimal.
inline std::string format_table(const TableReport &report) {
    std::ostringstream out;
    char buf[200];
    out << "Table " << report.id << ": " << report.title << "\n";
    if (report.schedule) {
        out << "(" << report.schedule->runs << " runs x " << report.schedule->shots
            << " shots, seed " << report.schedule->seed
            << (report.noise.empty() ? ", noiseless" : ", noise " + report.noise) << ")\n";
    }
    for (const TableRow &row : report.rows) {
        for (const TableCell &cell : row.cells) {
            std::snprintf(buf, sizeof buf, "%-6s %-9s theory %5.1f", row.label.c_str(),
                          cell.column.c_str(), cell.theory_pct);
            out << buf;
            if (cell.mean_pct) {
                std::snprintf(buf, sizeof buf, "   sim %5.1f +- %.1f", *cell.mean_pct,
                              cell.std_pct.value_or(0.0));
                out << buf;
            }
            if (cell.corrected_pct) {
                std::snprintf(buf, sizeof buf, "   corr %5.1f +- %.1f", *cell.corrected_pct,
                              cell.corrected_std_pct.value_or(0.0));
                out << buf;
            }
            out << "\n";
        }
    }
    for (const std::string &note : report.notes) {
        out << "note: " << note << "\n";
    }
    return out.str();
}

/// Full-precision CSV: table,row,column,theory_pct,mean_pct,std_pct,
/// corrected_pct,corrected_std_pct.
inline std::string table_csv(const TableReport &report) {
    std::ostringstream out;
    out << "table,row,column,theory_pct,mean_pct,std_pct,corrected_pct,corrected_std_pct\n";
    auto opt = [](const std::optional<double> &v) {
        return v ? detail::full_precision(*v) : std::string{};
    };
    for (const TableRow &row : report.rows) {
        for (const TableCell &cell : row.cells) {
            out << report.id << ',' << row.label << ',' << cell.column << ','
                << detail::full_precision(cell.theory_pct) << ',' << opt(cell.mean_pct) << ','
                << opt(cell.std_pct) << ',' << opt(cell.corrected_pct) << ','
                << opt(cell.corrected_std_pct) << '\n';
        }
    }
    return out.str();
}

} // namespace ifm
