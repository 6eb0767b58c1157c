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
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "ifm/gates.hpp"
#include "ifm/state_vector.hpp"

namespace ifm {

struct Unitary {
    Gate gate;
    std::size_t qubit = 0;
    friend bool operator==(const Unitary &, const Unitary &) = default;
};

struct Cnot {
    std::size_t control = 0;
    std::size_t target = 0;
    friend bool operator==(const Cnot &, const Cnot &) = default;
};

struct Measure {
    std::size_t qubit = 0;
    std::size_t cbit = 0;
    friend bool operator==(const Measure &, const Measure &) = default;
};

/// Gate-like instructions that may sit inside a Conditional.
using GateOp = std::variant<Unitary, Cnot>;

/// Runs `op` only when classical bit `cbit` currently holds `required`.
struct Conditional {
    std::size_t cbit = 0;
    bool required = false;
    GateOp op;
    friend bool operator==(const Conditional &, const Conditional &) = default;
};

using Instruction = std::variant<Unitary, Cnot, Measure, Conditional>;

template <class... Ts> struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts> overloaded(Ts...) -> overloaded<Ts...>;

/// Classical-register value; bit k holds cbit k.
using Outcome = std::uint64_t;

inline constexpr std::size_t kMaxCbits = 64;

/// Outcome as text with cbit 0 as the leftmost character.
inline std::string format_outcome(Outcome outcome, std::size_t num_cbits) {
    std::string s(num_cbits, '0');
    for (std::size_t k = 0; k < num_cbits; ++k) {
        if ((outcome >> k) & 1U) {
            s[k] = '1';
        }
    }
    return s;
}

inline Outcome parse_outcome(std::string_view text) {
    if (text.size() > kMaxCbits) {
        throw std::invalid_argument("outcome string longer than 64 bits");
    }
    Outcome out = 0;
    for (std::size_t k = 0; k < text.size(); ++k) {
        if (text[k] == '1') {
            out |= Outcome{1} << k;
        } else if (text[k] != '0') {
            throw std::invalid_argument("outcome string must contain only 0 and 1");
        }
    }
    return out;
}

inline bool cbit_set(Outcome outcome, std::size_t k) { return ((outcome >> k) & 1U) != 0; }

/**
 * Ordered instruction list over `num_qubits` qubits and `num_cbits`
 * classical bits.
 *
 * Well-formedness is enforced on every append: indices in range, CNOT
 * control != target, each cbit written by at most one Measure, and every
 * Conditional reads a cbit that an earlier Measure wrote. A Circuit that
 * exists is therefore always valid.
 */
class Circuit {
  public:
    Circuit(std::size_t num_qubits, std::size_t num_cbits, std::string label = {})
        : num_qubits_{num_qubits}, num_cbits_{num_cbits}, label_{std::move(label)},
          cbit_source_(num_cbits) {
        if (num_qubits < 1 || num_qubits > kMaxQubits) {
            throw std::invalid_argument("circuit qubit count must be in [1, " +
                                        std::to_string(kMaxQubits) + "]");
        }
        if (num_cbits > kMaxCbits) {
            throw std::invalid_argument("circuit supports at most 64 classical bits");
        }
    }

    [[nodiscard]] std::size_t num_qubits() const noexcept { return num_qubits_; }
    [[nodiscard]] std::size_t num_cbits() const noexcept { return num_cbits_; }
    [[nodiscard]] const std::string &label() const noexcept { return label_; }
    void set_label(std::string label) { label_ = std::move(label); }
    [[nodiscard]] const std::vector<Instruction> &instructions() const noexcept {
        return instructions_;
    }
    [[nodiscard]] std::size_t size() const noexcept { return instructions_.size(); }

    /// Qubit whose measurement writes cbit `k`, if any.
    [[nodiscard]] std::optional<std::size_t> cbit_source(std::size_t k) const {
        check_cbit(k);
        return cbit_source_[k];
    }

    /// Mask of cbits that some Conditional reads.
    [[nodiscard]] Outcome conditioned_cbits() const noexcept { return conditioned_; }

    [[nodiscard]] Outcome measured_cbits() const noexcept {
        Outcome mask = 0;
        for (std::size_t k = 0; k < num_cbits_; ++k) {
            if (cbit_source_[k]) {
                mask |= Outcome{1} << k;
            }
        }
        return mask;
    }

    Circuit &append(Instruction instr) {
        std::visit(overloaded{
                       [&](const Unitary &u) { check_unitary(u); },
                       [&](const Cnot &c) { check_cnot(c); },
                       [&](const Measure &m) {
                           check_qubit(m.qubit);
                           check_cbit(m.cbit);
                           if (cbit_source_[m.cbit]) {
                               throw std::invalid_argument("cbit " + std::to_string(m.cbit) +
                                                           " is written by more than one measure");
                           }
                       },
                       [&](const Conditional &c) {
                           check_cbit(c.cbit);
                           if (!cbit_source_[c.cbit]) {
                               throw std::invalid_argument(
                                   "conditional reads cbit " + std::to_string(c.cbit) +
                                   " before any measure writes it");
                           }
                           std::visit(overloaded{[&](const Unitary &u) { check_unitary(u); },
                                                 [&](const Cnot &x) { check_cnot(x); }},
                                      c.op);
                       },
                   },
                   instr);
        if (const auto *m = std::get_if<Measure>(&instr)) {
            cbit_source_[m->cbit] = m->qubit;
        } else if (const auto *c = std::get_if<Conditional>(&instr)) {
            conditioned_ |= Outcome{1} << c->cbit;
        }
        instructions_.push_back(std::move(instr));
        return *this;
    }

    Circuit &gate(const Gate &g, std::size_t q) { return append(Unitary{g, q}); }
    Circuit &u1(double lambda, std::size_t q) { return gate(Gate::u1(lambda), q); }
    Circuit &u2(double phi, double lambda, std::size_t q) { return gate(Gate::u2(phi, lambda), q); }
    Circuit &u3(double theta, double phi, double lambda, std::size_t q) {
        return gate(Gate::u3(theta, phi, lambda), q);
    }
    Circuit &x(std::size_t q) { return gate(Gate::x(), q); }
    Circuit &h(std::size_t q) { return gate(Gate::h(), q); }
    Circuit &cx(std::size_t control, std::size_t target) {
        return append(Cnot{control, target});
    }
    Circuit &measure(std::size_t q, std::size_t c) { return append(Measure{q, c}); }
    Circuit &when(std::size_t cbit, bool required, GateOp op) {
        return append(Conditional{cbit, required, std::move(op)});
    }

    friend bool operator==(const Circuit &a, const Circuit &b) {
        return a.num_qubits_ == b.num_qubits_ && a.num_cbits_ == b.num_cbits_ &&
               a.instructions_ == b.instructions_;
    }

  private:
    void check_qubit(std::size_t q) const {
        if (q >= num_qubits_) {
            throw std::out_of_range("qubit index " + std::to_string(q) + " out of range");
        }
    }
    void check_cbit(std::size_t c) const {
        if (c >= num_cbits_) {
            throw std::out_of_range("cbit index " + std::to_string(c) + " out of range");
        }
    }
    void check_unitary(const Unitary &u) const {
        check_qubit(u.qubit);
        (void)u.gate.matrix(); // rejects non-finite parameters
    }
    void check_cnot(const Cnot &c) const {
        check_qubit(c.control);
        check_qubit(c.target);
        if (c.control == c.target) {
            throw std::invalid_argument("cnot control and target must differ");
        }
    }

    std::size_t num_qubits_;
    std::size_t num_cbits_;
    std::string label_;
    std::vector<Instruction> instructions_;
    std::vector<std::optional<std::size_t>> cbit_source_;
    Outcome conditioned_ = 0;
};

/// Applies a gate-like instruction to `state`.
inline void apply_gate_op(StateVector &state, const GateOp &op) {
    std::visit(overloaded{[&](const Unitary &u) { state.apply_single(u.gate.matrix(), u.qubit); },
                          [&](const Cnot &c) { state.apply_cnot(c.control, c.target); }},
               op);
}

inline bool condition_holds(const Conditional &c, Outcome recorded) {
    return cbit_set(recorded, c.cbit) == c.required;
}

} // namespace ifm
