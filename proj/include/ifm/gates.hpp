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
#include <cmath>
#include <complex>
#include <initializer_list>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ifm {

using Complex = std::complex<double>;

/// Row-major 2x2 complex matrix acting on one qubit.
struct GateMatrix {
    std::array<Complex, 4> m{};

    constexpr Complex &operator()(std::size_t row, std::size_t col) { return m[2 * row + col]; }
    constexpr const Complex &operator()(std::size_t row, std::size_t col) const {
        return m[2 * row + col];
    }

    friend GateMatrix operator*(const GateMatrix &a, const GateMatrix &b) {
        GateMatrix out;
        for (std::size_t i = 0; i < 2; ++i) {
            for (std::size_t j = 0; j < 2; ++j) {
                out(i, j) = a(i, 0) * b(0, j) + a(i, 1) * b(1, j);
            }
        }
        return out;
    }

    [[nodiscard]] GateMatrix adjoint() const {
        GateMatrix out;
        for (std::size_t i = 0; i < 2; ++i) {
            for (std::size_t j = 0; j < 2; ++j) {
                out(i, j) = std::conj((*this)(j, i));
            }
        }
        return out;
    }
};

/// Largest entrywise deviation of U^dagger U from the identity.
inline double unitarity_error(const GateMatrix &u) {
    const GateMatrix p = u.adjoint() * u;
    double worst = 0.0;
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            const Complex expected = (i == j) ? Complex{1.0, 0.0} : Complex{0.0, 0.0};
            worst = std::max(worst, std::abs(p(i, j) - expected));
        }
    }
    return worst;
}

inline bool is_unitary(const GateMatrix &u, double tol = 1e-10) {
    return unitarity_error(u) < tol;
}

namespace detail {
inline void require_finite(std::initializer_list<double> values, std::string_view what) {
    for (double v : values) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument(std::string(what) + ": non-finite gate parameter");
        }
    }
}
} // namespace detail

/**
 * OpenQASM 2.0 `u3` in the half-angle convention:
 *
 *   [[cos(t/2),            -e^{i l} sin(t/2)],
 *    [e^{i p} sin(t/2),  e^{i(p+l)} cos(t/2)]]
 *
 * so u3(pi/N, 0, 0)|0> = cos(pi/2N)|0> + sin(pi/2N)|1>.
 */
inline GateMatrix u3_matrix(double theta, double phi, double lambda) {
    detail::require_finite({theta, phi, lambda}, "u3");
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    GateMatrix g;
    g(0, 0) = c;
    g(0, 1) = -std::polar(1.0, lambda) * s;
    g(1, 0) = std::polar(1.0, phi) * s;
    g(1, 1) = std::polar(1.0, phi + lambda) * c;
    return g;
}

/// u2(phi, lambda) = u3(pi/2, phi, lambda).
inline GateMatrix u2_matrix(double phi, double lambda) {
    detail::require_finite({phi, lambda}, "u2");
    return u3_matrix(std::numbers::pi / 2.0, phi, lambda);
}

/// u1(lambda) = diag(1, e^{i lambda}).
inline GateMatrix u1_matrix(double lambda) {
    detail::require_finite({lambda}, "u1");
    GateMatrix g;
    g(0, 0) = 1.0;
    g(1, 1) = std::polar(1.0, lambda);
    return g;
}

inline GateMatrix pauli_x_matrix() {
    GateMatrix g;
    g(0, 1) = 1.0;
    g(1, 0) = 1.0;
    return g;
}

inline GateMatrix hadamard_matrix() {
    const double h = 1.0 / std::numbers::sqrt2;
    GateMatrix g;
    g(0, 0) = h;
    g(0, 1) = h;
    g(1, 0) = h;
    g(1, 1) = -h;
    return g;
}

enum class GateKind { u1, u2, u3, x, h };

/**
 * A named single-qubit gate from the supported set. Parameters that a kind
 * does not use are zero. Keeping the name (not just the matrix) lets circuits
 * be written back out as text losslessly.
 */
struct Gate {
    GateKind kind = GateKind::x;
    double theta = 0.0;
    double phi = 0.0;
    double lambda = 0.0;

    static Gate u1(double lambda) { return {GateKind::u1, 0.0, 0.0, lambda}; }
    static Gate u2(double phi, double lambda) { return {GateKind::u2, 0.0, phi, lambda}; }
    static Gate u3(double theta, double phi, double lambda) {
        return {GateKind::u3, theta, phi, lambda};
    }
    static Gate x() { return {GateKind::x}; }
    static Gate h() { return {GateKind::h}; }

    [[nodiscard]] GateMatrix matrix() const {
        switch (kind) {
        case GateKind::u1:
            return u1_matrix(lambda);
        case GateKind::u2:
            return u2_matrix(phi, lambda);
        case GateKind::u3:
            return u3_matrix(theta, phi, lambda);
        case GateKind::x:
            return pauli_x_matrix();
        case GateKind::h:
            return hadamard_matrix();
        }
        throw std::logic_error("unknown gate kind");
    }

    friend bool operator==(const Gate &, const Gate &) = default;
};

inline std::string_view gate_name(GateKind kind) {
    switch (kind) {
    case GateKind::u1:
        return "u1";
    case GateKind::u2:
        return "u2";
    case GateKind::u3:
        return "u3";
    case GateKind::x:
        return "x";
    case GateKind::h:
        return "h";
    }
    return "?";
}

} // namespace ifm
