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

#include "ifm/builders.hpp"
#include "ifm/circuit.hpp"
#include "ifm/distribution.hpp"
#include "ifm/exact.hpp"
#include "ifm/experiment.hpp"
#include "ifm/gates.hpp"
#include "ifm/layout.hpp"
#include "ifm/mitigation.hpp"
#include "ifm/plot.hpp"
#include "ifm/qasm.hpp"
#include "ifm/readout.hpp"
#include "ifm/rng.hpp"
#include "ifm/sampling.hpp"
#include "ifm/state_vector.hpp"
#include "ifm/stats.hpp"
#include "ifm/tables.hpp"
#include "ifm/theory.hpp"
