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

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ifm/gates.hpp"
#include "ifm/rng.hpp"

namespace ifm {

/// Dense registers above this size are rejected outright.
inline constexpr std::size_t kMaxQubits = 24;

/// Raised when a measurement finds no probability mass on either outcome.
class CorruptStateError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct BranchProbabilities {
    double p0 = 0.0;
    double p1 = 0.0;

    [[nodiscard]] double of(int bit) const { return bit ? p1 : p0; }
};

/**
 * Dense statevector over `num_qubits` qubits.
 *
 * Amplitude index i holds basis state |b_{n-1} ... b_1 b_0> with qubit q
 * stored in bit q of i. Outcome strings elsewhere in the library print
 * qubit/cbit 0 first; this class only deals with indices.
 */
class StateVector {
  public:
    /// |0...0> on `num_qubits` qubits.
    explicit StateVector(std::size_t num_qubits) : num_qubits_{num_qubits} {
        check_size(num_qubits);
        amplitudes_.assign(std::size_t{1} << num_qubits, Complex{0.0, 0.0});
        amplitudes_[0] = 1.0;
    }

    /// Builds a state from explicit amplitudes; length must be a power of two
    /// and the norm must be 1 within 1e-10.
    static StateVector from_amplitudes(std::vector<Complex> amplitudes) {
        const std::size_t len = amplitudes.size();
        if (len < 2 || (len & (len - 1)) != 0) {
            throw std::invalid_argument("amplitude count must be a power of two >= 2");
        }
        std::size_t n = 0;
        while ((std::size_t{1} << n) < len) {
            ++n;
        }
        StateVector sv(n);
        sv.amplitudes_ = std::move(amplitudes);
        if (std::abs(sv.norm_squared() - 1.0) > 1e-10) {
            throw std::invalid_argument("amplitudes are not normalized");
        }
        return sv;
    }

    /// Single basis state |index>.
    static StateVector basis(std::size_t num_qubits, std::size_t index) {
        StateVector sv(num_qubits);
        if (index >= sv.size()) {
            throw std::out_of_range("basis index out of range");
        }
        sv.amplitudes_[0] = 0.0;
        sv.amplitudes_[index] = 1.0;
        return sv;
    }

    [[nodiscard]] std::size_t num_qubits() const noexcept { return num_qubits_; }
    [[nodiscard]] std::size_t size() const noexcept { return amplitudes_.size(); }
    [[nodiscard]] std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }
    [[nodiscard]] const Complex &operator[](std::size_t i) const { return amplitudes_.at(i); }

    [[nodiscard]] double norm_squared() const noexcept {
        double total = 0.0;
        for (const Complex &a : amplitudes_) {
            total += std::norm(a);
        }
        return total;
    }

    void apply_single(const GateMatrix &gate, std::size_t q) {
        check_qubit(q);
        const std::size_t stride = std::size_t{1} << q;
        for (std::size_t base = 0; base < size(); base += 2 * stride) {
            for (std::size_t i = base; i < base + stride; ++i) {
                const Complex a0 = amplitudes_[i];
                const Complex a1 = amplitudes_[i + stride];
                amplitudes_[i] = gate(0, 0) * a0 + gate(0, 1) * a1;
                amplitudes_[i + stride] = gate(1, 0) * a0 + gate(1, 1) * a1;
            }
        }
    }

    void apply_cnot(std::size_t control, std::size_t target) {
        check_qubit(control);
        check_qubit(target);
        if (control == target) {
            throw std::invalid_argument("cnot control and target must differ");
        }
        const std::size_t cmask = std::size_t{1} << control;
        const std::size_t tmask = std::size_t{1} << target;
        for (std::size_t i = 0; i < size(); ++i) {
            // Visit each swapped pair once, from its target-0 member.
            if ((i & cmask) != 0 && (i & tmask) == 0) {
                std::swap(amplitudes_[i], amplitudes_[i | tmask]);
            }
        }
    }

    [[nodiscard]] BranchProbabilities branch_probabilities(std::size_t q) const {
        const BranchProbabilities mass = branch_masses(q);
        // Renormalize away accumulated rounding so that p0 + p1 == 1.
        const double total = mass.p0 + mass.p1;
        if (total > 0.0) {
            return {mass.p0 / total, mass.p1 / total};
        }
        return mass;
    }

    /// Projects qubit `q` onto `bit` and renormalizes. `probability` is the
    /// Born weight of that branch.
    void collapse(std::size_t q, int bit, double probability) {
        check_qubit(q);
        if (!(probability > 0.0)) {
            throw CorruptStateError("cannot collapse onto a zero-probability branch");
        }
        const std::size_t mask = std::size_t{1} << q;
        const double scale = 1.0 / std::sqrt(probability);
        for (std::size_t i = 0; i < size(); ++i) {
            const bool set = (i & mask) != 0;
            if (set == (bit != 0)) {
                amplitudes_[i] *= scale;
            } else {
                amplitudes_[i] = 0.0;
            }
        }
    }

    /// Projective Z measurement of qubit `q`, drawing one uniform from `rng`.
    int measure(std::size_t q, Rng &rng) {
        const BranchProbabilities p = checked_branches(q);
        const int bit = rng.uniform() < p.p0 ? 0 : 1;
        collapse(q, bit, p.of(bit));
        return bit;
    }

    /// Branch probabilities, raising CorruptStateError when both vanish.
    [[nodiscard]] BranchProbabilities checked_branches(std::size_t q) const {
        const BranchProbabilities mass = branch_masses(q);
        const double total = mass.p0 + mass.p1;
        if (!(total > 1e-300) || !std::isfinite(total)) {
            throw CorruptStateError("measurement found no probability mass");
        }
        return {mass.p0 / total, mass.p1 / total};
    }

  private:
    static void check_size(std::size_t n) {
        if (n < 1 || n > kMaxQubits) {
            throw std::invalid_argument("qubit count must be in [1, " +
                                        std::to_string(kMaxQubits) + "]");
        }
    }

    [[nodiscard]] BranchProbabilities branch_masses(std::size_t q) const {
        check_qubit(q);
        const std::size_t mask = std::size_t{1} << q;
        BranchProbabilities mass;
        for (std::size_t i = 0; i < size(); ++i) {
            ((i & mask) ? mass.p1 : mass.p0) += std::norm(amplitudes_[i]);
        }
        return mass;
    }

    void check_qubit(std::size_t q) const {
        if (q >= num_qubits_) {
            throw std::out_of_range("qubit index " + std::to_string(q) +
                                    " out of range for " + std::to_string(num_qubits_) +
                                    "-qubit state");
        }
    }

    std::size_t num_qubits_;
    std::vector<Complex> amplitudes_;
};

// Value-returning forms.

inline StateVector apply_single(StateVector state, const GateMatrix &gate, std::size_t q) {
    state.apply_single(gate, q);
    return state;
}

inline StateVector apply_cnot(StateVector state, std::size_t control, std::size_t target) {
    state.apply_cnot(control, target);
    return state;
}

inline BranchProbabilities branch_probabilities(const StateVector &state, std::size_t q) {
    return state.branch_probabilities(q);
}

struct MeasureResult {
    int bit;
    StateVector state;
};

inline MeasureResult measure(StateVector state, std::size_t q, Rng &rng) {
    const int bit = state.measure(q, rng);
    return {bit, std::move(state)};
}

/**
 * State equality modulo a global phase: all |a_i|^2 agree and, on the
 * support, relative phases agree, within `tol`.
 */
inline bool equal_up_to_global_phase(const StateVector &a, const StateVector &b,
                                     double tol = 1e-10) {
    if (a.num_qubits() != b.num_qubits()) {
        return false;
    }
    // Align phases on the largest amplitude of `a`.
    std::size_t pivot = 0;
    for (std::size_t i = 1; i < a.size(); ++i) {
        if (std::norm(a[i]) > std::norm(a[pivot])) {
            pivot = i;
        }
    }
    if (std::abs(std::abs(a[pivot]) - std::abs(b[pivot])) > tol || std::abs(b[pivot]) == 0.0) {
        return false;
    }
    const Complex phase = (a[pivot] / std::abs(a[pivot])) / (b[pivot] / std::abs(b[pivot]));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (std::abs(a[i] - phase * b[i]) > tol) {
            return false;
        }
    }
    return true;
}

} // namespace ifm
