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

#include <string>
#include <string_view>
#include <vector>

#include "catlab/lab.h"
#include "catlab/protocol.h"
#include "catlab/state.h"

namespace catlab {

struct NamedState {
    std::string name;
    QuantumState state;
};

struct NamedProtocol {
    std::string name;
    ProtocolSpec protocol;
};

/// A laboratory together with the named objects declared alongside it.
///
/// `measurements` lists every declared measurement. Those also present in
/// `lab` are allowed; the rest are hypothetical candidates that can be put on
/// trial with nogo_verdict or assumed for a protocol run.
struct Scenario {
    std::string name;
    Laboratory lab;
    std::vector<NamedState> states;
    std::vector<NamedMeasurement> measurements;
    std::vector<NamedProtocol> protocols;

    const QuantumState *find_state(std::string_view name) const;
    /// Throws UnknownName, or InvalidState if the named state is mixed.
    const StateVector &pure_state(std::string_view name) const;
    const ProjectiveMeasurement *find_measurement(std::string_view name) const;
    const ProtocolSpec *find_protocol(std::string_view name) const;
    bool is_candidate(std::string_view measurement) const;
    /// `lab` plus the named candidate measurements. Throws UnknownName.
    Laboratory lab_assuming(const std::vector<std::string> &candidates) const;
};

namespace catalog {

HilbertSpace cat_space();
HilbertSpace device_space();
HilbertSpace composite_space();
HilbertSpace photon_space();
HilbertSpace stone_bread_space();

StateVector alive();
StateVector dead();
/// (|alive⟩ ± |dead⟩)/√2
StateVector cat_plus();
StateVector cat_minus();
/// ½|alive⟩⟨alive| + ½|dead⟩⟨dead|
DensityMatrix cat_mixture();

StateVector undecayed();
StateVector decayed();
/// (|undecayed⟩ ± |decayed⟩)/√2
StateVector device_plus();
StateVector device_minus();

/// (|undecayed⟩|alive⟩ ± |decayed⟩|dead⟩)/√2
StateVector schroedinger_plus();
StateVector schroedinger_minus();
/// ½ of each of |undecayed⟩|alive⟩ and |decayed⟩|dead⟩.
DensityMatrix chamber_ensemble();

StateVector photon_h();
StateVector photon_v();
/// (|0⟩ ± |1⟩)/√2
StateVector photon_x_plus();
StateVector photon_x_minus();
DensityMatrix photon_mixture();
/// 45° polarization rotation: |0⟩ -> |x+⟩.
Operator photon_rotation();

StateVector stone();
StateVector bread();

/// (a|L⟩ + b|D⟩)(a*⟨L| + b*⟨D|) for the normalized pair (a, b).
Operator superposition_projector(const StateVector &live, const StateVector &dead, Complex a, Complex b);

/// repeat(rounds) { probe; discriminator; stop-if live_label }
ProtocolSpec resurrection_protocol(std::string probe, std::string discriminator, std::string live_label,
                                   std::size_t rounds);

/// Scenario names accepted by build_scenario.
std::vector<std::string> scenario_names();

}  // namespace catalog

/// One of "cat", "composite", "photon", "stone-bread". Throws UnknownScenario.
Scenario build_scenario(std::string_view name);

}  // namespace catlab
