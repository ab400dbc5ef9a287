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

#include "catlab/catalog.h"

#include <cmath>

#include "catlab/error.h"

namespace catlab {

const QuantumState *Scenario::find_state(std::string_view name) const {
    for (const auto &s : states) {
        if (s.name == name) {
            return &s.state;
        }
    }
    return nullptr;
}

const StateVector &Scenario::pure_state(std::string_view name) const {
    const auto *s = find_state(name);
    if (!s) {
        throw CatlabError(ErrorCode::UnknownName, "no state named '" + std::string(name) + "'");
    }
    if (const auto *psi = std::get_if<StateVector>(s)) {
        return *psi;
    }
    throw CatlabError(ErrorCode::InvalidState, "'" + std::string(name) + "' is a mixture, a pure state is needed");
}

const ProjectiveMeasurement *Scenario::find_measurement(std::string_view name) const {
    for (const auto &m : measurements) {
        if (m.name == name) {
            return &m.measurement;
        }
    }
    return nullptr;
}

const ProtocolSpec *Scenario::find_protocol(std::string_view name) const {
    for (const auto &p : protocols) {
        if (p.name == name) {
            return &p.protocol;
        }
    }
    return nullptr;
}

bool Scenario::is_candidate(std::string_view measurement) const {
    return find_measurement(measurement) != nullptr && lab.find_measurement(measurement) == nullptr;
}

Laboratory Scenario::lab_assuming(const std::vector<std::string> &candidates) const {
    Laboratory out = lab;
    for (const auto &name : candidates) {
        const auto *m = find_measurement(name);
        if (!m) {
            throw CatlabError(ErrorCode::UnknownName, "no measurement named '" + name + "'");
        }
        if (!out.find_measurement(name)) {
            out = out.with_measurement(name, *m);
        }
    }
    return out;
}

namespace catalog {

namespace {

const double kInvSqrt2 = 1 / std::sqrt(2.0);

StateVector pure(const HilbertSpace &space, std::initializer_list<Complex> amps) {
    return make_state(space, std::vector<Complex>(amps));
}

ProjectiveMeasurement measurement(std::vector<StateVector> states, std::vector<std::string> labels) {
    return ProjectiveMeasurement::from_states(states, std::move(labels));
}

}  // namespace

HilbertSpace cat_space() {
    return HilbertSpace({"alive", "dead"});
}

HilbertSpace device_space() {
    return HilbertSpace({"undecayed", "decayed"});
}

HilbertSpace composite_space() {
    return HilbertSpace::product(device_space(), cat_space());
}

HilbertSpace photon_space() {
    return HilbertSpace({"0", "1"});
}

HilbertSpace stone_bread_space() {
    return HilbertSpace({"stone", "bread"});
}

StateVector alive() {
    return basis_state(cat_space(), "alive");
}

StateVector dead() {
    return basis_state(cat_space(), "dead");
}

StateVector cat_plus() {
    return pure(cat_space(), {1, 1});
}

StateVector cat_minus() {
    return pure(cat_space(), {1, -1});
}

DensityMatrix cat_mixture() {
    std::vector<WeightedState> parts{{0.5, alive()}, {0.5, dead()}};
    return make_mixture(parts);
}

StateVector undecayed() {
    return basis_state(device_space(), "undecayed");
}

StateVector decayed() {
    return basis_state(device_space(), "decayed");
}

StateVector device_plus() {
    return pure(device_space(), {1, 1});
}

StateVector device_minus() {
    return pure(device_space(), {1, -1});
}

StateVector schroedinger_plus() {
    return pure(composite_space(), {1, 0, 0, 1});
}

StateVector schroedinger_minus() {
    return pure(composite_space(), {1, 0, 0, -1});
}

DensityMatrix chamber_ensemble() {
    std::vector<WeightedState> parts{{0.5, tensor(undecayed(), alive())}, {0.5, tensor(decayed(), dead())}};
    return make_mixture(parts);
}

StateVector photon_h() {
    return basis_state(photon_space(), "0");
}

StateVector photon_v() {
    return basis_state(photon_space(), "1");
}

StateVector photon_x_plus() {
    return pure(photon_space(), {1, 1});
}

StateVector photon_x_minus() {
    return pure(photon_space(), {1, -1});
}

DensityMatrix photon_mixture() {
    std::vector<WeightedState> parts{{0.5, photon_h()}, {0.5, photon_v()}};
    return make_mixture(parts);
}

Operator photon_rotation() {
    return Operator::unitary(photon_space(), Matrix(2, {kInvSqrt2, -kInvSqrt2, kInvSqrt2, kInvSqrt2}));
}

StateVector stone() {
    return basis_state(stone_bread_space(), "stone");
}

StateVector bread() {
    return basis_state(stone_bread_space(), "bread");
}

Operator superposition_projector(const StateVector &live, const StateVector &dead, Complex a, Complex b) {
    if (!(live.space() == dead.space())) {
        throw CatlabError(ErrorCode::DimensionMismatch, "L and D live in different spaces");
    }
    Amplitudes amps(live.dim());
    for (std::size_t k = 0; k < amps.size(); k++) {
        amps[k] = a * live[k] + b * dead[k];
    }
    return projector_from_state(make_state(live.space(), amps));
}

ProtocolSpec resurrection_protocol(std::string probe, std::string discriminator, std::string live_label,
                                   std::size_t rounds) {
    return {{ProtocolStep::repeat(rounds, {ProtocolStep::measure(std::move(probe)),
                                           ProtocolStep::measure(std::move(discriminator)),
                                           ProtocolStep::stop_if(std::move(live_label))})}};
}

std::vector<std::string> scenario_names() {
    return {"cat", "composite", "photon", "stone-bread"};
}

namespace {

Scenario cat_scenario() {
    auto space = cat_space();
    std::vector<NamedMeasurement> all{
        {"P_L", measurement({alive(), dead()}, {"alive", "dead"})},
        {"P_cat+", measurement({cat_plus()}, {"cat+"})},
        {"pm", measurement({cat_plus(), cat_minus()}, {"+", "-"})},
    };
    Laboratory lab(space, {all[0]}, {}, {{dead(), alive()}});
    return Scenario{
        "cat",
        std::move(lab),
        {{"alive", alive()}, {"dead", dead()}, {"cat+", cat_plus()}, {"cat-", cat_minus()}, {"rho_cat", cat_mixture()}},
        std::move(all),
        {
            {"observe", {{ProtocolStep::measure("P_L")}}},
            {"resurrection", {{ProtocolStep::measure("P_cat+"), ProtocolStep::measure("P_L")}}},
            {"resurrection3", resurrection_protocol("P_cat+", "P_L", "alive", 3)},
            {"resurrection10", resurrection_protocol("P_cat+", "P_L", "alive", 10)},
        },
    };
}

Scenario composite_scenario() {
    auto space = composite_space();
    auto ua = tensor(undecayed(), alive());
    auto dd = tensor(decayed(), dead());
    auto ud = tensor(undecayed(), dead());
    auto da = tensor(decayed(), alive());
    std::vector<NamedMeasurement> all{
        {"product", measurement({ua, dd, ud, da}, {"ua", "dd", "ud", "da"})},
        {"P_Sch+", measurement({schroedinger_plus()}, {"Psi+"})},
    };
    Laboratory lab(space, {all[0]}, {}, {{dd, ua}});
    return Scenario{
        "composite",
        std::move(lab),
        {{"undecayed_alive", ua},
         {"decayed_dead", dd},
         {"undecayed_dead", ud},
         {"decayed_alive", da},
         {"Psi+", schroedinger_plus()},
         {"Psi-", schroedinger_minus()},
         {"rho_S", chamber_ensemble()}},
        std::move(all),
        {
            {"collapse", {{ProtocolStep::measure("product")}}},
            {"resurrection", {{ProtocolStep::measure("P_Sch+"), ProtocolStep::measure("product")}}},
            {"resurrection4", resurrection_protocol("P_Sch+", "product", "ua", 4)},
        },
    };
}

Scenario photon_scenario() {
    auto space = photon_space();
    std::vector<NamedMeasurement> all{
        {"basis01", measurement({photon_h(), photon_v()}, {"0", "1"})},
        {"basis_x", measurement({photon_x_plus(), photon_x_minus()}, {"+", "-"})},
    };
    Laboratory lab(space, all, {{"R45", photon_rotation()}}, {});
    return Scenario{
        "photon",
        std::move(lab),
        {{"0", photon_h()},
         {"1", photon_v()},
         {"x+", photon_x_plus()},
         {"x-", photon_x_minus()},
         {"rho_ph", photon_mixture()}},
        std::move(all),
        {
            {"measure01", {{ProtocolStep::measure("basis01")}}},
            {"polarize45", {{ProtocolStep::measure("basis_x")}}},
            {"rotate_then_measure", {{ProtocolStep::unitary("R45"), ProtocolStep::measure("basis01")}}},
        },
    };
}

Scenario stone_bread_scenario() {
    auto space = stone_bread_space();
    auto loaf = pure(space, {0.6, 0.8});
    std::vector<NamedMeasurement> all{
        {"basis", measurement({stone(), bread()}, {"stone", "bread"})},
        {"P_sb", measurement({loaf}, {"loaf"})},
    };
    Laboratory lab(space, {all[0]}, {}, {{stone(), bread()}, {bread(), stone()}});
    return Scenario{
        "stone-bread",
        std::move(lab),
        {{"stone", stone()}, {"bread", bread()}, {"loaf", loaf}},
        std::move(all),
        {
            {"transmute", {{ProtocolStep::measure("P_sb"), ProtocolStep::measure("basis")}}},
            {"transmute5", resurrection_protocol("P_sb", "basis", "bread", 5)},
        },
    };
}

}  // namespace

}  // namespace catalog

Scenario build_scenario(std::string_view name) {
    if (name == "cat") {
        return catalog::cat_scenario();
    }
    if (name == "composite") {
        return catalog::composite_scenario();
    }
    if (name == "photon") {
        return catalog::photon_scenario();
    }
    if (name == "stone-bread") {
        return catalog::stone_bread_scenario();
    }
    throw CatlabError(ErrorCode::UnknownScenario, "no built-in scenario '" + std::string(name) + "'");
}

}  // namespace catlab
