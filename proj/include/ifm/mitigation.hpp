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
#include <stdexcept>

#include "ifm/circuit.hpp"

namespace ifm {

/// The circuit with every gate removed: same registers, same measurements
/// in the same order. Its ideal outcome is all zeros, so its observed
/// all-zero fraction measures readout fidelity alone.
inline Circuit build_calibration_circuit(const Circuit &circuit) {
    Circuit cal(circuit.num_qubits(), circuit.num_cbits(), circuit.label() + " [calibration]");
    for (const Instruction &instr : circuit.instructions()) {
        if (const auto *m = std::get_if<Measure>(&instr)) {
            cal.append(*m);
        }
    }
    return cal;
}

/// All-zero fraction of the calibration circuit across runs.
struct CalibrationEstimate {
    double fraction = 1.0;
    double sigma = 0.0;
};

/// Mitigated all-zero estimate in percent.
struct CorrectedEstimate {
    double value = 0.0;
    double sigma = 0.0;
    /// Set when the corrected value exceeds 100%. The value itself is kept.
    bool clamped = false;
};

class DegenerateCalibrationError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/**
 * Divides the raw all-zero percentage by the calibration fraction and
 * propagates both uncertainties in quadrature as relative errors:
 *
 *   value = mean / f
 *   sigma = value * sqrt((sigma_raw / mean)^2 + (sigma_f / f)^2)
 *
 * A raw mean of exactly zero takes the limit sigma = sigma_raw / f.
 */
inline CorrectedEstimate mitigate(double raw_mean_pct, double raw_sigma_pct,
                                  const CalibrationEstimate &cal) {
    if (!(cal.fraction > 0.0)) {
        throw DegenerateCalibrationError("calibration all-zero fraction is zero");
    }
    if (!(cal.fraction <= 1.0) || !(cal.sigma >= 0.0)) {
        throw std::invalid_argument("calibration estimate out of range");
    }
    if (!(raw_mean_pct >= 0.0) || !(raw_sigma_pct >= 0.0)) {
        throw std::invalid_argument("raw estimate must be non-negative");
    }
    CorrectedEstimate out;
    out.value = raw_mean_pct / cal.fraction;
    if (raw_mean_pct == 0.0) {
        out.sigma = raw_sigma_pct / cal.fraction;
    } else {
        const double rel_raw = raw_sigma_pct / raw_mean_pct;
        const double rel_cal = cal.sigma / cal.fraction;
        out.sigma = out.value * std::hypot(rel_raw, rel_cal);
    }
    out.clamped = out.value > 100.0;
    return out;
}

} // namespace ifm
