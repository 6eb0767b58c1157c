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

// Live bomb vs dud: exact distributions and one sampled experiment each.

#include <cstdio>

#include "ifm/ifm.hpp"

int main() {
    for (bool live : {true, false}) {
        const ifm::Circuit circuit = ifm::build_bomb_tester(live);
        std::printf("== %s ==\n", circuit.label().c_str());
        for (const auto &[outcome, p] : ifm::exact_distribution(circuit).by_string()) {
            std::printf("  exact  %s  %5.1f%%\n", outcome.c_str(), 100.0 * p);
        }
        const ifm::ExperimentResult result = ifm::run_experiment(circuit, ifm::RunSchedule{});
        std::printf("%s", ifm::format_result(result).c_str());
    }
    // "00" can only come from a live bomb that did not go off.
    return 0;
}
