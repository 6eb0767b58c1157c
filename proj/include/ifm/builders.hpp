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
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>

#include "ifm/circuit.hpp"

namespace ifm {

/// Iteration count and computation result of the counterfactual protocol.
struct ProtocolParams {
    std::size_t iterations = 1;
    /// Result r of the one-bit computation f(0) = r.
    int result = 1;

    /// Rotation per iteration applied to the switch qubit: pi / (2N).
    [[nodiscard]] double theta() const {
        return std::numbers::pi / (2.0 * static_cast<double>(iterations));
    }

    /// Polar angle passed to u3; u3(pi/N, 0, 0) rotates |0> by theta.
    [[nodiscard]] double u3_angle() const {
        return std::numbers::pi / static_cast<double>(iterations);
    }

    void validate() const {
        if (iterations < 1) {
            throw std::invalid_argument("iteration count N must be >= 1");
        }
        if (result != 0 && result != 1) {
            throw std::invalid_argument("computation result r must be 0 or 1");
        }
    }
};

/**
 * Bomb tester on two qubits. q0 is the switch and q1 the photon.
 *
 *   u2(0,0) q0; [cx q0,q1]; measure q1 -> c1; u2(0,0) q0; measure q0 -> c0
 *
 * The dud variant drops only the CNOT; q1 is still measured so both
 * variants report two-bit outcomes.
 */
inline Circuit build_bomb_tester(bool live) {
    Circuit c(2, 2, live ? "bomb" : "dud");
    c.u2(0.0, 0.0, 0);
    if (live) {
        c.cx(0, 1);
    }
    c.measure(1, 1);
    c.u2(0.0, 0.0, 0);
    c.measure(0, 0);
    return c;
}

/**
 * Counterfactual-computation circuit using classical feedback on a single
 * reused register qubit: 2 qubits, N+1 cbits.
 *
 * Iteration k rotates q0 by u3(pi/N,0,0), applies the device CNOT (r = 1
 * only) and measures q1 into cbit k. For k >= 1 the rotation and CNOT only
 * run if cbit k-1 read 0. q0 is measured last into cbit N, unconditionally.
 */
inline Circuit build_jozsa_conditional(const ProtocolParams &params) {
    params.validate();
    const std::size_t n = params.iterations;
    Circuit c(2, n + 1,
              "jozsa-cond N=" + std::to_string(n) + " r=" + std::to_string(params.result));
    const Gate rotation = Gate::u3(params.u3_angle(), 0.0, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        if (k == 0) {
            c.gate(rotation, 0);
            if (params.result == 1) {
                c.cx(0, 1);
            }
        } else {
            c.when(k - 1, false, Unitary{rotation, 0});
            if (params.result == 1) {
                c.when(k - 1, false, Cnot{0, 1});
            }
        }
        c.measure(1, k);
    }
    c.measure(0, n);
    return c;
}

/**
 * Feedback-free equivalent of build_jozsa_conditional: iteration k uses a
 * fresh ancilla q_{k+1} as the register. N+1 qubits, N+1 cbits.
 */
inline Circuit build_jozsa_ancilla(const ProtocolParams &params) {
    params.validate();
    const std::size_t n = params.iterations;
    if (n + 1 > kMaxQubits) {
        throw std::invalid_argument("ancilla circuit needs N+1 qubits; N too large");
    }
    Circuit c(n + 1, n + 1,
              "jozsa-anc N=" + std::to_string(n) + " r=" + std::to_string(params.result));
    const Gate rotation = Gate::u3(params.u3_angle(), 0.0, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        c.gate(rotation, 0);
        if (params.result == 1) {
            c.cx(0, k + 1);
        }
        c.measure(k + 1, k);
    }
    c.measure(0, n);
    return c;
}

enum class CircuitKind { bomb, dud, jozsa_conditional, jozsa_ancilla };

inline std::string_view circuit_kind_name(CircuitKind kind) {
    switch (kind) {
    case CircuitKind::bomb:
        return "bomb";
    case CircuitKind::dud:
        return "dud";
    case CircuitKind::jozsa_conditional:
        return "jozsa-cond";
    case CircuitKind::jozsa_ancilla:
        return "jozsa-anc";
    }
    return "?";
}

inline CircuitKind parse_circuit_kind(std::string_view name) {
    for (CircuitKind k : {CircuitKind::bomb, CircuitKind::dud, CircuitKind::jozsa_conditional,
                          CircuitKind::jozsa_ancilla}) {
        if (circuit_kind_name(k) == name) {
            return k;
        }
    }
    throw std::invalid_argument("unknown circuit '" + std::string(name) +
                                "' (expected bomb, dud, jozsa-cond or jozsa-anc)");
}

/// `params` is ignored for the bomb and dud circuits.
inline Circuit make_circuit(CircuitKind kind, const ProtocolParams &params = {}) {
    switch (kind) {
    case CircuitKind::bomb:
        return build_bomb_tester(true);
    case CircuitKind::dud:
        return build_bomb_tester(false);
    case CircuitKind::jozsa_conditional:
        return build_jozsa_conditional(params);
    case CircuitKind::jozsa_ancilla:
        return build_jozsa_ancilla(params);
    }
    throw std::logic_error("unknown circuit kind");
}

} // namespace ifm
