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
#include <numbers>
#include <stdexcept>

namespace ifm {

/// Probability that the counterfactual protocol with N iterations ends with
/// every classical bit at 0 when r = 1: (cos^2(pi/2N))^N.
inline double theoretical_success(std::size_t n) {
    if (n < 1) {
        throw std::invalid_argument("iteration count N must be >= 1");
    }
    const double c = std::cos(std::numbers::pi / (2.0 * static_cast<double>(n)));
    return std::pow(c * c, static_cast<double>(n));
}

/// Probability of one particular outcome with a single intermediate 1
/// (N >= 2): (sin(pi/2N))^4 (cos(pi/2N))^(2(N-2)).
inline double single_one_probability(std::size_t n) {
    if (n < 2) {
        throw std::invalid_argument("single-1 outcomes need N >= 2");
    }
    const double theta = std::numbers::pi / (2.0 * static_cast<double>(n));
    return std::pow(std::sin(theta), 4.0) *
           std::pow(std::cos(theta), 2.0 * static_cast<double>(n - 2));
}

} // namespace ifm
