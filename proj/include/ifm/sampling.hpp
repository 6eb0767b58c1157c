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
#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "ifm/circuit.hpp"
#include "ifm/exact.hpp"
#include "ifm/readout.hpp"
#include "ifm/rng.hpp"
#include "ifm/state_vector.hpp"

namespace ifm {

/// Shot histogram over classical-register outcomes.
struct Counts {
    std::size_t num_cbits = 0;
    std::map<Outcome, std::uint64_t> counts;

    [[nodiscard]] std::uint64_t total() const {
        std::uint64_t t = 0;
        for (const auto &[o, n] : counts) {
            t += n;
        }
        return t;
    }

    [[nodiscard]] std::uint64_t count(Outcome o) const {
        auto it = counts.find(o);
        return it == counts.end() ? 0 : it->second;
    }

    [[nodiscard]] std::map<std::string, std::uint64_t> by_string() const {
        std::map<std::string, std::uint64_t> out;
        for (const auto &[o, n] : counts) {
            out[format_outcome(o, num_cbits)] = n;
        }
        return out;
    }

    void merge(const Counts &other) {
        for (const auto &[o, n] : other.counts) {
            counts[o] += n;
        }
    }
};

namespace detail {

/// Draws the recorded value of one readout. Consumes one uniform for the
/// true outcome and, when `noise` is set, a second one for the flip.
inline int readout_flip(int true_bit, const ReadoutError *noise, Rng &rng) {
    if (!noise) {
        return true_bit;
    }
    return rng.uniform() < noise->flip_probability(true_bit) ? 1 - true_bit : true_bit;
}

} // namespace detail

/**
 * One shot by full statevector execution: every Measure draws a bit from
 * the Born rule, collapses, and records (possibly flipped) into its cbit.
 */
inline Outcome run_shot(const Circuit &circuit, Rng &rng, const ReadoutErrorModel *noise = nullptr) {
    StateVector state(circuit.num_qubits());
    Outcome recorded = 0;
    for (const Instruction &instr : circuit.instructions()) {
        std::visit(overloaded{
                       [&](const Unitary &u) { apply_gate_op(state, u); },
                       [&](const Cnot &c) { apply_gate_op(state, c); },
                       [&](const Conditional &c) {
                           if (condition_holds(c, recorded)) {
                               apply_gate_op(state, c.op);
                           }
                       },
                       [&](const Measure &m) {
                           const BranchProbabilities bp = state.checked_branches(m.qubit);
                           const int b = rng.uniform() < bp.p0 ? 0 : 1;
                           state.collapse(m.qubit, b, bp.of(b));
                           const int c = detail::readout_flip(b, noise ? &noise->at(m.qubit) : nullptr, rng);
                           if (c) {
                               recorded |= Outcome{1} << m.cbit;
                           }
                       },
                   },
                   instr);
    }
    return recorded;
}

/**
 * Shot sampler over a precomputed measurement-trajectory tree.
 *
 * Each tree node is a Measure reached along one history of recorded bits
 * and stores the Born probability of reading 0 there. A shot walks the tree
 * drawing exactly the uniforms run_shot would, so both produce the same
 * outcome for the same stream, but no statevector work happens per shot.
 * The tree is immutable after construction and safe to share across threads.
 */
class TrajectorySampler {
  public:
    explicit TrajectorySampler(const Circuit &circuit, const ReadoutErrorModel *noise = nullptr)
        : num_cbits_{circuit.num_cbits()} {
        if (noise) {
            detail::require_model_covers(circuit, *noise);
        }
        Builder builder{circuit, noise, nodes_};
        root_ = builder.build(0, StateVector(circuit.num_qubits()), 0, 1.0);
    }

    [[nodiscard]] std::size_t num_cbits() const noexcept { return num_cbits_; }
    [[nodiscard]] std::size_t node_count() const noexcept { return nodes_.size(); }

    [[nodiscard]] Outcome sample(Rng &rng) const {
        Outcome recorded = 0;
        std::int32_t at = root_;
        while (at >= 0) {
            const Node &n = nodes_[static_cast<std::size_t>(at)];
            int b = rng.uniform() < n.p0 ? 0 : 1;
            int c = detail::readout_flip(b, n.has_noise ? &n.error : nullptr, rng);
            std::size_t slot = n.readout_branch ? static_cast<std::size_t>(2 * b + c)
                                                : static_cast<std::size_t>(b);
            if (n.child[slot] == kPruned) {
                // Only reachable with probability below the prune threshold.
                slot = n.fallback;
                if (n.readout_branch) {
                    c = static_cast<int>(slot % 2);
                } else {
                    const bool flipped = c != b;
                    b = static_cast<int>(slot);
                    c = flipped ? 1 - b : b;
                }
            }
            if (c) {
                recorded |= Outcome{1} << n.cbit;
            }
            at = n.child[slot];
        }
        return recorded;
    }

  private:
    static constexpr std::int32_t kLeaf = -1;
    static constexpr std::int32_t kPruned = -2;

    struct Node {
        std::size_t cbit = 0;
        double p0 = 0.0;
        bool has_noise = false;
        bool readout_branch = false;
        ReadoutError error;
        std::array<std::int32_t, 4> child{kPruned, kPruned, kPruned, kPruned};
        std::size_t fallback = 0;
    };

    struct Builder {
        const Circuit &circuit;
        const ReadoutErrorModel *noise;
        std::vector<Node> &nodes;

        std::int32_t build(std::size_t pos, StateVector state, Outcome recorded, double weight) {
            const auto &instrs = circuit.instructions();
            for (; pos < instrs.size(); ++pos) {
                const Instruction &instr = instrs[pos];
                if (const auto *m = std::get_if<Measure>(&instr)) {
                    return branch(pos, std::move(state), recorded, weight, *m);
                }
                if (const auto *c = std::get_if<Conditional>(&instr)) {
                    if (condition_holds(*c, recorded)) {
                        apply_gate_op(state, c->op);
                    }
                } else if (const auto *u = std::get_if<Unitary>(&instr)) {
                    apply_gate_op(state, *u);
                } else {
                    apply_gate_op(state, std::get<Cnot>(instr));
                }
            }
            return kLeaf;
        }

        std::int32_t branch(std::size_t pos, StateVector state, Outcome recorded, double weight,
                            const Measure &m) {
            if (nodes.size() >= static_cast<std::size_t>(INT32_MAX)) {
                throw std::length_error("trajectory tree too large");
            }
            const auto index = static_cast<std::int32_t>(nodes.size());
            Node node;
            node.cbit = m.cbit;
            const BranchProbabilities bp = state.checked_branches(m.qubit);
            node.p0 = bp.p0;
            if (noise) {
                node.has_noise = true;
                node.error = noise->at(m.qubit);
                node.readout_branch = cbit_set(circuit.conditioned_cbits(), m.cbit);
            }
            nodes.push_back(node);

            std::array<std::int32_t, 4> child{kPruned, kPruned, kPruned, kPruned};
            std::array<double, 4> child_weight{};
            const Outcome bit = Outcome{1} << m.cbit;
            for (int b = 0; b < 2; ++b) {
                const double wb = weight * bp.of(b);
                if (wb < kPruneThreshold) {
                    continue;
                }
                StateVector next = state;
                next.collapse(m.qubit, b, bp.of(b));
                if (!node.readout_branch) {
                    // Either noiseless (recorded == true bit) or the cbit is never
                    // read back, so the tree follows the true bit.
                    child[b] = build(pos + 1, std::move(next), b ? (recorded | bit) : recorded, wb);
                    child_weight[b] = wb;
                    continue;
                }
                for (int c = 0; c < 2; ++c) {
                    const double wc = wb * node.error.transition(b, c);
                    if (wc < kPruneThreshold) {
                        continue;
                    }
                    const std::size_t slot = static_cast<std::size_t>(2 * b + c);
                    child[slot] = build(pos + 1, next, c ? (recorded | bit) : recorded, wc);
                    child_weight[slot] = wc;
                }
            }
            Node &stored = nodes[static_cast<std::size_t>(index)];
            stored.child = child;
            stored.fallback = static_cast<std::size_t>(
                std::max_element(child_weight.begin(), child_weight.end()) - child_weight.begin());
            return index;
        }
    };

    std::size_t num_cbits_;
    std::vector<Node> nodes_;
    std::int32_t root_ = kLeaf;
};

struct SamplingOptions {
    /// Worker threads; results do not depend on this value.
    unsigned threads = 1;
    /// Run every shot through run_shot instead of the trajectory tree.
    bool direct = false;
};

namespace detail {

template <class ShotFn>
Counts sample_parallel(std::size_t num_cbits, std::uint64_t shots, std::uint64_t seed,
                       unsigned threads, const ShotFn &shot) {
    if (shots < 1) {
        throw std::invalid_argument("shots must be >= 1");
    }
    const auto workers = static_cast<unsigned>(std::clamp<std::uint64_t>(threads, 1, shots));
    std::vector<Counts> partial(workers, Counts{num_cbits, {}});
    auto work = [&](unsigned w) {
        const std::uint64_t begin = shots * w / workers;
        const std::uint64_t end = shots * (w + 1) / workers;
        for (std::uint64_t i = begin; i < end; ++i) {
            Rng rng = Rng::stream(seed, i);
            ++partial[w].counts[shot(rng)];
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back(work, w);
        }
    }
    Counts total{num_cbits, {}};
    for (const Counts &c : partial) {
        total.merge(c);
    }
    return total;
}

} // namespace detail

/// Samples `shots` walks of a prebuilt tree; shot i draws from
/// Rng::stream(seed, i).
inline Counts sample_counts(const TrajectorySampler &sampler, std::uint64_t shots,
                            std::uint64_t seed, unsigned threads = 1) {
    return detail::sample_parallel(sampler.num_cbits(), shots, seed, threads,
                                   [&](Rng &rng) { return sampler.sample(rng); });
}

/**
 * Samples `shots` independent executions. Shot i draws from
 * Rng::stream(seed, i), so counts depend only on (circuit, shots, seed,
 * noise) and not on threading or the sampling path.
 */
inline Counts sample_counts(const Circuit &circuit, std::uint64_t shots, std::uint64_t seed,
                            const ReadoutErrorModel *noise = nullptr,
                            SamplingOptions options = {}) {
    if (shots < 1) {
        throw std::invalid_argument("shots must be >= 1");
    }
    if (!options.direct) {
        return sample_counts(TrajectorySampler(circuit, noise), shots, seed, options.threads);
    }
    if (noise) {
        detail::require_model_covers(circuit, *noise);
    }
    return detail::sample_parallel(circuit.num_cbits(), shots, seed, options.threads,
                                   [&](Rng &rng) { return run_shot(circuit, rng, noise); });
}

} // namespace ifm
