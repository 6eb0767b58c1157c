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
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ifm/circuit.hpp"
#include "ifm/distribution.hpp"

namespace ifm {

/// Classical bit-flip probabilities for reading out one qubit.
struct ReadoutError {
    /// P(read 1 | true 0).
    double p01 = 0.0;
    /// P(read 0 | true 1).
    double p10 = 0.0;

    [[nodiscard]] double flip_probability(int true_bit) const { return true_bit ? p10 : p01; }

    /// P(read `recorded` | true `true_bit`).
    [[nodiscard]] double transition(int true_bit, int recorded) const {
        const double flip = flip_probability(true_bit);
        return true_bit == recorded ? 1.0 - flip : flip;
    }
};

/// Per-qubit readout errors. Qubits absent from the model are an error when
/// a measurement on them is read through the model.
class ReadoutErrorModel {
  public:
    ReadoutErrorModel() = default;

    static ReadoutErrorModel symmetric(double p, std::size_t num_qubits) {
        ReadoutErrorModel model;
        for (std::size_t q = 0; q < num_qubits; ++q) {
            model.set(q, {p, p});
        }
        return model;
    }

    void set(std::size_t qubit, ReadoutError error) {
        for (double p : {error.p01, error.p10}) {
            if (!(p >= 0.0 && p <= 1.0)) {
                throw std::invalid_argument("readout error probabilities must lie in [0, 1]");
            }
        }
        errors_[qubit] = error;
    }

    [[nodiscard]] bool covers(std::size_t qubit) const { return errors_.contains(qubit); }

    [[nodiscard]] const ReadoutError &at(std::size_t qubit) const {
        auto it = errors_.find(qubit);
        if (it == errors_.end()) {
            throw std::out_of_range("readout model has no entry for qubit " +
                                    std::to_string(qubit));
        }
        return it->second;
    }

    [[nodiscard]] const std::map<std::size_t, ReadoutError> &entries() const noexcept {
        return errors_;
    }

    [[nodiscard]] bool is_noiseless() const {
        for (const auto &[q, e] : errors_) {
            if (e.p01 != 0.0 || e.p10 != 0.0) {
                return false;
            }
        }
        return true;
    }

  private:
    std::map<std::size_t, ReadoutError> errors_;
};

/**
 * Parses the noise-model text format: one `<qubit> <p01> <p10>` line per
 * qubit, `#` starts a comment, blank lines ignored.
 */
inline ReadoutErrorModel parse_readout_model(const std::string &text) {
    ReadoutErrorModel model;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream fields(line);
        long long qubit = 0;
        double p01 = 0.0;
        double p10 = 0.0;
        std::string first;
        if (!(fields >> first)) {
            continue;
        }
        std::istringstream qfield(first);
        std::string extra;
        if (!(qfield >> qubit) || !qfield.eof() || qubit < 0 || !(fields >> p01 >> p10) ||
            (fields >> extra)) {
            throw std::invalid_argument("noise model line " + std::to_string(line_no) +
                                        ": expected '<qubit> <p01> <p10>'");
        }
        if (model.covers(static_cast<std::size_t>(qubit))) {
            throw std::invalid_argument("noise model line " + std::to_string(line_no) +
                                        ": duplicate qubit " + std::to_string(qubit));
        }
        try {
            model.set(static_cast<std::size_t>(qubit), {p01, p10});
        } catch (const std::invalid_argument &e) {
            throw std::invalid_argument("noise model line " + std::to_string(line_no) + ": " +
                                        e.what());
        }
    }
    return model;
}

inline ReadoutErrorModel load_readout_model(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open noise model file " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_readout_model(buf.str());
}

/**
 * Passes `dist` through independent per-bit readout flips. `cbit_sources[k]`
 * names the qubit whose readout error applies to cbit k; cbits without a
 * source (nullopt) or outside `mask` are left untouched.
 */
inline OutcomeDistribution apply_readout_noise(const OutcomeDistribution &dist,
                                               const ReadoutErrorModel &model,
                                               const std::vector<std::optional<std::size_t>> &cbit_sources,
                                               Outcome mask = ~Outcome{0}) {
    if (cbit_sources.size() != dist.num_cbits()) {
        throw std::invalid_argument("cbit source list does not match distribution width");
    }
    std::map<Outcome, double> current = dist.probabilities();
    for (std::size_t k = 0; k < dist.num_cbits(); ++k) {
        if (!cbit_sources[k] || !cbit_set(mask, k)) {
            continue;
        }
        const ReadoutError &err = model.at(*cbit_sources[k]);
        if (err.p01 == 0.0 && err.p10 == 0.0) {
            continue;
        }
        std::map<Outcome, double> next;
        const Outcome bit = Outcome{1} << k;
        for (const auto &[o, p] : current) {
            const int true_bit = cbit_set(o, k) ? 1 : 0;
            const double flip = err.flip_probability(true_bit);
            if (flip != 1.0) {
                next[o] += p * (1.0 - flip);
            }
            if (flip != 0.0) {
                next[o ^ bit] += p * flip;
            }
        }
        current = std::move(next);
    }
    OutcomeDistribution out(dist.num_cbits());
    for (const auto &[o, p] : current) {
        out.add(o, p);
    }
    return out;
}

/// Readout noise on a circuit's outcome distribution; each measured cbit
/// uses the error of the qubit that wrote it.
inline OutcomeDistribution apply_readout_noise(const Circuit &circuit,
                                               const OutcomeDistribution &dist,
                                               const ReadoutErrorModel &model) {
    std::vector<std::optional<std::size_t>> sources(circuit.num_cbits());
    for (std::size_t k = 0; k < circuit.num_cbits(); ++k) {
        sources[k] = circuit.cbit_source(k);
    }
    return apply_readout_noise(dist, model, sources);
}

/// Readout noise where cbit k is read out from qubit k.
inline OutcomeDistribution apply_readout_noise(const OutcomeDistribution &dist,
                                               const ReadoutErrorModel &model) {
    std::vector<std::optional<std::size_t>> sources(dist.num_cbits());
    for (std::size_t k = 0; k < dist.num_cbits(); ++k) {
        sources[k] = k;
    }
    return apply_readout_noise(dist, model, sources);
}

} // namespace ifm
