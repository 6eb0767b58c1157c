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
#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ifm/circuit.hpp"
#include "ifm/exact.hpp"
#include "ifm/mitigation.hpp"
#include "ifm/readout.hpp"
#include "ifm/rng.hpp"
#include "ifm/sampling.hpp"
#include "ifm/stats.hpp"

namespace ifm {

/// runs x shots repetitions of one circuit.
struct RunSchedule {
    std::size_t runs = 10;
    std::uint64_t shots = 8192;
    std::uint64_t seed = 0;
    /// Worker threads for sampling; output is independent of this.
    unsigned threads = 1;

    void validate() const {
        if (runs < 1) {
            throw std::invalid_argument("runs must be >= 1");
        }
        if (shots < 1) {
            throw std::invalid_argument("shots must be >= 1");
        }
    }

    /// Seed of run `run`; the calibration circuit uses its own family.
    [[nodiscard]] std::uint64_t run_seed(std::size_t run, bool calibration = false) const {
        return derive_seed(derive_seed(seed, calibration ? 1 : 0), run);
    }
};

struct OutcomeStats {
    double mean_pct = 0.0;
    /// Unbiased (n-1) sample standard deviation across runs.
    double std_pct = 0.0;
    /// Noiseless exact probability, in percent.
    double theory_pct = 0.0;
};

/// Descriptive fields carried into reports and CSV output.
struct ExperimentMetadata {
    std::string circuit;
    std::optional<std::size_t> n;
    std::optional<int> r;
    std::string noise;
};

struct ExperimentResult {
    ExperimentMetadata meta;
    RunSchedule schedule;
    std::string label;
    std::size_t num_cbits = 0;
    std::map<Outcome, OutcomeStats> outcomes;
    /// Percentage of each outcome in each run.
    std::vector<std::map<Outcome, double>> run_percentages;
    std::optional<CalibrationEstimate> calibration;
    /// Mitigated estimate for the all-zero outcome.
    std::optional<CorrectedEstimate> corrected;
    /// Mean percentage of shots on outcomes the noiseless circuit never produces.
    double unexpected_pct = 0.0;
    std::vector<std::string> notes;

    [[nodiscard]] OutcomeStats stats(Outcome o) const {
        auto it = outcomes.find(o);
        if (it != outcomes.end()) {
            return it->second;
        }
        return {};
    }
    [[nodiscard]] OutcomeStats stats(const std::string &o) const {
        return stats(parse_outcome(o));
    }
    [[nodiscard]] OutcomeStats all_zero() const { return stats(Outcome{0}); }
};

namespace detail {

struct RunSeries {
    std::vector<std::map<Outcome, double>> percentages;
    std::set<Outcome> seen;
};

inline RunSeries sample_runs(const Circuit &circuit, const RunSchedule &schedule,
                             const ReadoutErrorModel *noise, bool calibration) {
    RunSeries series;
    // One sampler for all runs; per-shot streams keep runs independent.
    const TrajectorySampler sampler(circuit, noise);
    for (std::size_t run = 0; run < schedule.runs; ++run) {
        const std::uint64_t seed = schedule.run_seed(run, calibration);
        const Counts counts = sample_counts(sampler, schedule.shots, seed, schedule.threads);
        std::map<Outcome, double> pct;
        for (const auto &[o, k] : counts.counts) {
            pct[o] = 100.0 * static_cast<double>(k) / static_cast<double>(schedule.shots);
            series.seen.insert(o);
        }
        series.percentages.push_back(std::move(pct));
    }
    return series;
}

inline std::pair<double, double> outcome_moments(const RunSeries &series, Outcome o) {
    std::vector<double> xs;
    xs.reserve(series.percentages.size());
    for (const auto &run : series.percentages) {
        auto it = run.find(o);
        xs.push_back(it == run.end() ? 0.0 : it->second);
    }
    return {stats::mean(xs), stats::sample_stddev(xs)};
}

} // namespace detail

/**
 * Samples `circuit` runs x shots times and reports per-outcome mean and
 * unbiased standard deviation of the per-run percentages.
 *
 * With `noise`, each readout passes through the model. With `calibrate`,
 * the gate-free calibration circuit is sampled on the same schedule and
 * the all-zero estimate is divided by its all-zero fraction.
 */
inline ExperimentResult run_experiment(const Circuit &circuit, const RunSchedule &schedule,
                                       const ReadoutErrorModel *noise = nullptr,
                                       bool calibrate = false, ExperimentMetadata meta = {}) {
    schedule.validate();
    ExperimentResult result;
    result.meta = std::move(meta);
    if (result.meta.circuit.empty()) {
        result.meta.circuit = circuit.label();
    }
    result.schedule = schedule;
    result.label = circuit.label();
    result.num_cbits = circuit.num_cbits();

    const OutcomeDistribution ideal = exact_distribution(circuit);
    const detail::RunSeries series = detail::sample_runs(circuit, schedule, noise, false);

    std::set<Outcome> outcomes = series.seen;
    for (const auto &[o, p] : ideal.probabilities()) {
        outcomes.insert(o);
    }
    std::vector<double> unexpected(schedule.runs, 0.0);
    for (Outcome o : outcomes) {
        OutcomeStats s;
        std::tie(s.mean_pct, s.std_pct) = detail::outcome_moments(series, o);
        s.theory_pct = 100.0 * ideal.probability(o);
        result.outcomes[o] = s;
        if (ideal.probability(o) < kPruneThreshold) {
            for (std::size_t run = 0; run < schedule.runs; ++run) {
                auto it = series.percentages[run].find(o);
                if (it != series.percentages[run].end()) {
                    unexpected[run] += it->second;
                }
            }
        }
    }
    result.run_percentages = series.percentages;
    result.unexpected_pct = stats::mean(unexpected);
    if (result.unexpected_pct > 0.0) {
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "%.3f%% of shots fell on outcomes the noiseless circuit never produces; "
                      "they are reported as separate outcomes, not discarded",
                      result.unexpected_pct);
        result.notes.emplace_back(buf);
    }

    if (calibrate) {
        const Circuit cal = build_calibration_circuit(circuit);
        const detail::RunSeries cal_series = detail::sample_runs(cal, schedule, noise, true);
        const auto [f_mean, f_std] = detail::outcome_moments(cal_series, Outcome{0});
        result.calibration = CalibrationEstimate{f_mean / 100.0, f_std / 100.0};
        const OutcomeStats zero = result.all_zero();
        result.corrected = mitigate(zero.mean_pct, zero.std_pct, *result.calibration);
        if (result.corrected->clamped) {
            result.notes.emplace_back("corrected all-zero estimate exceeds 100%");
        }
    }
    return result;
}

namespace detail {
inline std::string full_precision(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}
} // namespace detail

/**
 * CSV with columns outcome, mean_pct, std_pct, corrected_pct,
 * corrected_std_pct, n, r, circuit, seed. Rows are sorted by outcome
 * string; corrected columns are filled only on the all-zero row.
 */
inline std::string result_csv(const ExperimentResult &result) {
    std::ostringstream out;
    out << "outcome,mean_pct,std_pct,corrected_pct,corrected_std_pct,n,r,circuit,seed\n";
    std::map<std::string, std::pair<Outcome, OutcomeStats>> rows;
    for (const auto &[o, s] : result.outcomes) {
        rows[format_outcome(o, result.num_cbits)] = {o, s};
    }
    for (const auto &[text, entry] : rows) {
        const auto &[o, s] = entry;
        out << text << ',' << detail::full_precision(s.mean_pct) << ','
            << detail::full_precision(s.std_pct) << ',';
        if (o == 0 && result.corrected) {
            out << detail::full_precision(result.corrected->value) << ','
                << detail::full_precision(result.corrected->sigma);
        } else {
            out << ',';
        }
        out << ',' << (result.meta.n ? std::to_string(*result.meta.n) : "") << ','
            << (result.meta.r ? std::to_string(*result.meta.r) : "") << ',' << result.meta.circuit
            << ',' << result.schedule.seed << '\n';
    }
    return out.str();
}

/// Human-readable summary, percentages to one decimal.
inline std::string format_result(const ExperimentResult &result) {
    std::ostringstream out;
    char buf[160];
    out << result.label << "  (" << result.schedule.runs << " runs x " << result.schedule.shots
        << " shots, seed " << result.schedule.seed;
    if (!result.meta.noise.empty()) {
        out << ", noise " << result.meta.noise;
    }
    out << ")\n";
    out << "outcome      theory    mean +- std\n";
    std::map<std::string, OutcomeStats> rows;
    for (const auto &[o, s] : result.outcomes) {
        rows[format_outcome(o, result.num_cbits)] = s;
    }
    for (const auto &[text, s] : rows) {
        std::snprintf(buf, sizeof buf, "%-12s %6.1f  %6.1f +- %.1f\n", text.c_str(), s.theory_pct,
                      s.mean_pct, s.std_pct);
        out << buf;
    }
    if (result.calibration && result.corrected) {
        std::snprintf(buf, sizeof buf,
                      "calibration all-zero fraction %.4f +- %.4f\n"
                      "all-zero: uncorrected %.1f +- %.1f, corrected %.1f +- %.1f%s\n",
                      result.calibration->fraction, result.calibration->sigma,
                      result.all_zero().mean_pct, result.all_zero().std_pct,
                      result.corrected->value, result.corrected->sigma,
                      result.corrected->clamped ? " (above 100%)" : "");
        out << buf;
    }
    for (const std::string &note : result.notes) {
        out << "note: " << note << "\n";
    }
    return out.str();
}

} // namespace ifm
