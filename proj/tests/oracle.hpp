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

// Test-only brute-force oracle: enumerates every assignment of true
// measurement results and recorded readouts, runs the circuit with those
// results forced, and multiplies the Born and readout weights. It shares
// nothing with the branching engine beyond the gate kernels.

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include "ifm/circuit.hpp"
#include "ifm/readout.hpp"
#include "ifm/state_vector.hpp"

namespace ifm::oracle {

inline std::size_t count_measures(const Circuit &c) {
    std::size_t m = 0;
    for (const Instruction &i : c.instructions()) {
        m += std::holds_alternative<Measure>(i) ? 1 : 0;
    }
    return m;
}

/// Probability of one (true results, recorded readouts) trajectory, with
/// measurement j in program order taking bit j of each mask.
inline double forced_trajectory(const Circuit &c, std::uint64_t true_bits,
                                std::uint64_t read_bits, const ReadoutErrorModel *noise,
                                Outcome &recorded) {
    std::vector<Complex> amp(std::size_t{1} << c.num_qubits());
    amp[0] = 1.0;
    auto state = StateVector::from_amplitudes(amp);
    double weight = 1.0;
    recorded = 0;
    std::size_t j = 0;
    for (const Instruction &instr : c.instructions()) {
        if (const auto *u = std::get_if<Unitary>(&instr)) {
            state.apply_single(u->gate.matrix(), u->qubit);
        } else if (const auto *x = std::get_if<Cnot>(&instr)) {
            state.apply_cnot(x->control, x->target);
        } else if (const auto *k = std::get_if<Conditional>(&instr)) {
            if (cbit_set(recorded, k->cbit) == k->required) {
                if (const auto *ku = std::get_if<Unitary>(&k->op)) {
                    state.apply_single(ku->gate.matrix(), ku->qubit);
                } else {
                    const Cnot &kc = std::get<Cnot>(k->op);
                    state.apply_cnot(kc.control, kc.target);
                }
            }
        } else {
            const Measure &m = std::get<Measure>(instr);
            const int b = static_cast<int>((true_bits >> j) & 1U);
            const int r = static_cast<int>((read_bits >> j) & 1U);
            ++j;
            // Project by hand: zero the other half, renormalize.
            std::vector<Complex> next(state.amplitudes().begin(), state.amplitudes().end());
            double p = 0.0;
            for (std::size_t i = 0; i < next.size(); ++i) {
                if (static_cast<int>((i >> m.qubit) & 1U) == b) {
                    p += std::norm(next[i]);
                } else {
                    next[i] = 0.0;
                }
            }
            if (p <= 0.0) {
                return 0.0;
            }
            for (auto &a : next) {
                a /= std::sqrt(p);
            }
            state = StateVector::from_amplitudes(std::move(next));
            weight *= p;
            if (noise) {
                const ReadoutError &e = noise->at(m.qubit);
                const double flip = b ? e.p10 : e.p01;
                weight *= (b == r) ? 1.0 - flip : flip;
            } else if (b != r) {
                return 0.0;
            }
            if (r) {
                recorded |= Outcome{1} << m.cbit;
            }
        }
    }
    return weight;
}

/// Full enumeration; exponential in the number of measurements.
inline std::map<Outcome, double> brute_force_distribution(const Circuit &c,
                                                          const ReadoutErrorModel *noise = nullptr) {
    const std::size_t m = count_measures(c);
    std::map<Outcome, double> dist;
    for (std::uint64_t t = 0; t < (std::uint64_t{1} << m); ++t) {
        for (std::uint64_t r = 0; r < (std::uint64_t{1} << m); ++r) {
            if (!noise && r != t) {
                continue;
            }
            Outcome rec = 0;
            const double w = forced_trajectory(c, t, r, noise, rec);
            if (w > 0.0) {
                dist[rec] += w;
            }
        }
    }
    return dist;
}

} // namespace ifm::oracle
