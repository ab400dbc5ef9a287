// Copyright 2026 The Catlab Authors
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

#include <vector>

#include "nlohmann/json.hpp"

#include "catlab/discriminate.h"
#include "catlab/lab.h"
#include "catlab/measure.h"
#include "catlab/protocol.h"
#include "catlab/state.h"

namespace catlab {

/// Insertion-ordered so that dumps are stable byte for byte.
using Json = nlohmann::ordered_json;

// States and matrices carry `labels`, optional `factors`, and flat `re`/`im`
// arrays (row-major for matrices). Doubles are written in shortest round-trip
// form, so reading a dump back reproduces every value exactly.

Json to_json(const HilbertSpace &space);
Json to_json(const StateVector &psi);
Json to_json(const DensityMatrix &rho);
Json to_json(const QuantumState &x);
Json to_json(const Operator &op);
Json to_json(const ProjectiveMeasurement &m);
Json to_json(const std::vector<OutcomeRecord> &records);
Json to_json(const SteeringPath &path);
Json to_json(const NoGoVerdict &verdict);
Json to_json(const OutcomeTree &tree);
Json to_json(const Histogram &histogram);
Json to_json(const ChiSquareResult &result);
Json to_json(const DiscriminationReport &report);

// Readers throw ParseError for malformed documents and let the constructors'
// own errors (InvalidState, InvalidOperator, ...) through.

HilbertSpace space_from_json(const Json &j);
StateVector state_vector_from_json(const Json &j);
DensityMatrix density_matrix_from_json(const Json &j);
QuantumState quantum_state_from_json(const Json &j);
Operator operator_from_json(const Json &j);
ProjectiveMeasurement measurement_from_json(const Json &j);
std::vector<OutcomeRecord> outcome_records_from_json(const Json &j);

}  // namespace catlab
