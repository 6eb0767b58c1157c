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
#include <functional>
#include <stdexcept>
#include <utility>

#include "ifm/circuit.hpp"
#include "ifm/distribution.hpp"
#include "ifm/readout.hpp"
#include "ifm/state_vector.hpp"

namespace ifm {

/// Branches whose cumulative probability falls below this are dropped.
inline constexpr double kPruneThreshold = 1e-15;

namespace detail {

/// Throws unless `model` has an entry for every measured qubit.
inline void require_model_covers(const Circuit &circuit, const ReadoutErrorModel &model) {
    for (std::size_t k = 0; k < circuit.num_cbits(); ++k) {
        if (auto q = circuit.cbit_source(k)) {
            (void)model.at(*q);
        }
    }
}

class ExactEvaluator {
  public:
    ExactEvaluator(const Circuit &circuit, const ReadoutErrorModel *noise)
        : circuit_{circuit}, noise_{noise}, dist_{circuit.num_cbits()} {}

    OutcomeDistribution run() {
        descend(0, StateVector(circuit_.num_qubits()), 0, 1.0);
        return std::move(dist_);
    }

  private:
    void descend(std::size_t pos, StateVector state, Outcome recorded, double weight) {
        const auto &instrs = circuit_.instructions();
        for (; pos < instrs.size(); ++pos) {
            const Instruction &instr = instrs[pos];
            if (const auto *m = std::get_if<Measure>(&instr)) {
                branch(pos, std::move(state), recorded, weight, *m);
                return;
            }
            std::visit(overloaded{
                           [&](const Unitary &u) { apply_gate_op(state, u); },
                           [&](const Cnot &c) { apply_gate_op(state, c); },
                           [&](const Conditional &c) {
                               if (condition_holds(c, recorded)) {
                                   apply_gate_op(state, c.op);
                               }
                           },
                           [](const Measure &) {},
                       },
                       instr);
        }
        dist_.add(recorded, weight);
    }

    void branch(std::size_t pos, StateVector state, Outcome recorded, double weight,
                const Measure &m) {
        const BranchProbabilities bp = state.branch_probabilities(m.qubit);
        const Outcome bit = Outcome{1} << m.cbit;
        // Recorded values of cbits read by later conditionals steer the
        // evolution, so under noise they are branched on explicitly. Other
        // cbits get their readout flips applied to the final distribution.
        const bool branch_on_readout = noise_ && cbit_set(circuit_.conditioned_cbits(), m.cbit);
        for (int b = 0; b < 2; ++b) {
            const double wb = weight * bp.of(b);
            if (wb < kPruneThreshold) {
                continue;
            }
            StateVector next = state;
            next.collapse(m.qubit, b, bp.of(b));
            if (!branch_on_readout) {
                descend(pos + 1, std::move(next), b ? (recorded | bit) : (recorded & ~bit), wb);
                continue;
            }
            const ReadoutError &err = noise_->at(m.qubit);
            for (int c = 0; c < 2; ++c) {
                const double wc = wb * err.transition(b, c);
                if (wc < kPruneThreshold) {
                    continue;
                }
                descend(pos + 1, next, c ? (recorded | bit) : (recorded & ~bit), wc);
            }
        }
    }

    const Circuit &circuit_;
    const ReadoutErrorModel *noise_;
    OutcomeDistribution dist_;
};

} // namespace detail

/**
 * Exact outcome distribution by depth-first branching at every measurement.
 *
 * Each Measure splits the current branch by its Born probabilities,
 * collapses, and continues with that branch's classical register, so
 * Conditionals are evaluated per branch. With `noise`, recorded bits pass
 * through the readout channel; conditionals see the recorded (noisy) bit.
 */
inline OutcomeDistribution exact_distribution(const Circuit &circuit,
                                              const ReadoutErrorModel *noise = nullptr) {
    if (noise) {
        detail::require_model_covers(circuit, *noise);
    }
    OutcomeDistribution dist = detail::ExactEvaluator(circuit, noise).run();
    if (!noise) {
        return dist;
    }
    std::vector<std::optional<std::size_t>> sources(circuit.num_cbits());
    for (std::size_t k = 0; k < circuit.num_cbits(); ++k) {
        sources[k] = circuit.cbit_source(k);
    }
    return apply_readout_noise(dist, *noise, sources, ~circuit.conditioned_cbits());
}

/// Summed probabilities over outcomes satisfying `pred` agree within `tol`.
inline bool distributions_equal_on(const Circuit &a, const Circuit &b,
                                   const std::function<bool(Outcome)> &pred, double tol = 1e-12) {
    if (a.num_cbits() != b.num_cbits()) {
        throw std::invalid_argument("circuits have different classical register widths");
    }
    const double pa = exact_distribution(a).mass(pred);
    const double pb = exact_distribution(b).mass(pred);
    return std::abs(pa - pb) <= tol;
}

/// Every individual outcome probability agrees within `tol`.
inline bool distributions_equal(const Circuit &a, const Circuit &b, double tol = 1e-12) {
    if (a.num_cbits() != b.num_cbits()) {
        throw std::invalid_argument("circuits have different classical register widths");
    }
    return max_abs_difference(exact_distribution(a), exact_distribution(b)) <= tol;
}

} // namespace ifm
