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
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

#include "ifm/circuit.hpp"

namespace ifm {

/// Exact probabilities over classical-register outcomes.
class OutcomeDistribution {
  public:
    OutcomeDistribution() = default;
    explicit OutcomeDistribution(std::size_t num_cbits) : num_cbits_{num_cbits} {}

    [[nodiscard]] std::size_t num_cbits() const noexcept { return num_cbits_; }
    [[nodiscard]] const std::map<Outcome, double> &probabilities() const noexcept {
        return probs_;
    }
    [[nodiscard]] bool empty() const noexcept { return probs_.empty(); }

    void add(Outcome outcome, double p) {
        if (p != 0.0) {
            probs_[outcome] += p;
        }
    }

    [[nodiscard]] double probability(Outcome outcome) const {
        auto it = probs_.find(outcome);
        return it == probs_.end() ? 0.0 : it->second;
    }

    [[nodiscard]] double probability(std::string_view outcome) const {
        if (outcome.size() != num_cbits_) {
            throw std::invalid_argument("outcome string length does not match cbit count");
        }
        return probability(parse_outcome(outcome));
    }

    [[nodiscard]] double total() const {
        double t = 0.0;
        for (const auto &[o, p] : probs_) {
            t += p;
        }
        return t;
    }

    /// Summed probability of outcomes satisfying `pred`.
    [[nodiscard]] double mass(const std::function<bool(Outcome)> &pred) const {
        double t = 0.0;
        for (const auto &[o, p] : probs_) {
            if (pred(o)) {
                t += p;
            }
        }
        return t;
    }

    /// Outcome strings (cbit 0 leftmost) mapped to probabilities.
    [[nodiscard]] std::map<std::string, double> by_string() const {
        std::map<std::string, double> out;
        for (const auto &[o, p] : probs_) {
            out[format_outcome(o, num_cbits_)] = p;
        }
        return out;
    }

  private:
    std::size_t num_cbits_ = 0;
    std::map<Outcome, double> probs_;
};

/// Largest per-outcome absolute difference over the union of supports.
inline double max_abs_difference(const OutcomeDistribution &a, const OutcomeDistribution &b) {
    double worst = 0.0;
    for (const auto &[o, p] : a.probabilities()) {
        worst = std::max(worst, std::abs(p - b.probability(o)));
    }
    for (const auto &[o, p] : b.probabilities()) {
        worst = std::max(worst, std::abs(p - a.probability(o)));
    }
    return worst;
}

} // namespace ifm
