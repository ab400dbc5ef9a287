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

#include "catlab/scenario.h"

#include <fstream>

#include "catlab/error.h"
#include "catlab/complex_text.h"
#include "catlab/serialize.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "test_util.h"

using namespace catlab;
using ::testing::HasSubstr;

namespace {

std::filesystem::path shipped(const std::string &name) {
    return std::filesystem::path(CATLAB_SOURCE_DIR) / "scenarios" / (name + ".scn");
}

double state_diff(const QuantumState &a, const QuantumState &b) {
    if (a.index() != b.index()) {
        return INFINITY;
    }
    if (const auto *psi = std::get_if<StateVector>(&a)) {
        return test_util::max_abs_diff(psi->amps(), std::get<StateVector>(b).amps());
    }
    return std::get<DensityMatrix>(a).matrix().max_abs_diff(std::get<DensityMatrix>(b).matrix());
}

/// Structural comparison; with `tol` = 0 every number must match exactly.
void expect_equivalent(const Scenario &a, const Scenario &b, double tol) {
    EXPECT_EQ(a.name, b.name);
    EXPECT_EQ(a.lab.space(), b.lab.space());
    ASSERT_EQ(a.states.size(), b.states.size());
    for (std::size_t k = 0; k < a.states.size(); k++) {
        EXPECT_EQ(a.states[k].name, b.states[k].name);
        EXPECT_LE(state_diff(a.states[k].state, b.states[k].state), tol) << a.states[k].name;
    }
    ASSERT_EQ(a.measurements.size(), b.measurements.size());
    for (std::size_t k = 0; k < a.measurements.size(); k++) {
        const auto &ma = a.measurements[k];
        const auto &mb = b.measurements[k];
        EXPECT_EQ(ma.name, mb.name);
        EXPECT_EQ(a.is_candidate(ma.name), b.is_candidate(mb.name));
        ASSERT_EQ(ma.measurement.size(), mb.measurement.size()) << ma.name;
        for (std::size_t j = 0; j < ma.measurement.size(); j++) {
            const auto &oa = ma.measurement.outcomes()[j];
            const auto &ob = mb.measurement.outcomes()[j];
            EXPECT_EQ(oa.label, ob.label);
            EXPECT_LE(oa.projector.matrix().max_abs_diff(ob.projector.matrix()), tol) << ma.name << " " << oa.label;
        }
    }
    ASSERT_EQ(a.lab.measurements().size(), b.lab.measurements().size());
    ASSERT_EQ(a.lab.unitaries().size(), b.lab.unitaries().size());
    for (std::size_t k = 0; k < a.lab.unitaries().size(); k++) {
        EXPECT_EQ(a.lab.unitaries()[k].name, b.lab.unitaries()[k].name);
        EXPECT_LE(a.lab.unitaries()[k].unitary.matrix().max_abs_diff(b.lab.unitaries()[k].unitary.matrix()), tol);
    }
    ASSERT_EQ(a.lab.forbidden().size(), b.lab.forbidden().size());
    for (std::size_t k = 0; k < a.lab.forbidden().size(); k++) {
        EXPECT_LE(test_util::max_abs_diff(a.lab.forbidden()[k].from.amps(), b.lab.forbidden()[k].from.amps()), tol);
        EXPECT_LE(test_util::max_abs_diff(a.lab.forbidden()[k].to.amps(), b.lab.forbidden()[k].to.amps()), tol);
    }
    ASSERT_EQ(a.protocols.size(), b.protocols.size());
    for (std::size_t k = 0; k < a.protocols.size(); k++) {
        EXPECT_EQ(a.protocols[k].name, b.protocols[k].name);
        EXPECT_EQ(a.protocols[k].protocol, b.protocols[k].protocol) << a.protocols[k].name;
    }
}

CatlabError load_error(const std::string &text) {
    try {
        parse_scenario_text(text, "t.scn");
    } catch (const CatlabError &e) {
        return e;
    }
    ADD_FAILURE() << "document loaded";
    return CatlabError(ErrorCode::ParseError, "");
}

const char *kHeader = "space:\n  labels: [a, b]\n";

}  // namespace

TEST(scenario_file, shipped_files_match_catalog) {
    for (const auto &name : catalog::scenario_names()) {
        SCOPED_TRACE(name);
        auto file = parse_scenario(shipped(name));
        expect_equivalent(file.scenario, build_scenario(name), 1e-15);
        EXPECT_EQ(file.sha256.size(), 64u);
    }
}

TEST(scenario_file, round_trip_is_exact) {
    for (const auto &name : catalog::scenario_names()) {
        SCOPED_TRACE(name);
        auto first = parse_scenario(shipped(name)).scenario;
        auto text = serialize_scenario(first);
        auto second = parse_scenario_text(text).scenario;
        expect_equivalent(first, second, 0);
        EXPECT_EQ(serialize_scenario(second), text);

        auto built = build_scenario(name);
        expect_equivalent(built, parse_scenario_text(serialize_scenario(built)).scenario, 0);
    }
}

TEST(scenario_file, round_trip_random_objects) {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 20; trial++) {
        auto space = test_util::numbered_space(2 + trial % 7);
        auto psi = test_util::random_state(rng, space);
        auto phi = test_util::random_state(rng, space);
        auto rho = test_util::random_mixture(rng, space, 3);
        auto m = test_util::random_measurement(rng, space, std::min<std::size_t>(1 + trial % 3, space.dim()));
        auto basis = test_util::random_basis(rng, space);
        Matrix columns(space.dim());
        for (std::size_t c = 0; c < space.dim(); c++) {
            for (std::size_t r = 0; r < space.dim(); r++) {
                columns(r, c) = basis[c][r];
            }
        }
        auto u = Operator::unitary(space, columns);
        Scenario s{"random",
                   Laboratory(space, {{"m", m}}, {{"u", u}}),
                   {{"psi", psi}, {"phi", phi}, {"rho", rho}},
                   {{"m", m}},
                   {{"p", ProtocolSpec{{ProtocolStep::repeat(2, {ProtocolStep::measure("m"), ProtocolStep::unitary("u")})}}}}};
        auto back = parse_scenario_text(serialize_scenario(s)).scenario;
        expect_equivalent(s, back, 0);
    }
}

TEST(scenario_file, hash_tracks_content) {
    auto a = parse_scenario_text(std::string(kHeader) + "states:\n  x: [1, 0]\n");
    auto b = parse_scenario_text(std::string(kHeader) + "states:\n  x: [1, 0]\n");
    auto c = parse_scenario_text(std::string(kHeader) + "states:\n  x: [0, 1]\n");
    EXPECT_EQ(a.sha256, b.sha256);
    EXPECT_NE(a.sha256, c.sha256);
    // Known digest of the empty string.
    EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST(scenario_file, complex_literals_and_sparse_states) {
    auto file = parse_scenario_text(std::string(kHeader) + "states:\n  s: [\"0.6\", \"0.8i\"]\n  t: {b: 1}\n");
    const auto &s = file.scenario.pure_state("s");
    EXPECT_EQ(s[0], Complex(0.6, 0));
    EXPECT_EQ(s[1], Complex(0, 0.8));
    EXPECT_EQ(file.scenario.pure_state("t")[1], Complex(1, 0));
    // Unnormalized input is normalized on load.
    auto g = parse_scenario_text(std::string(kHeader) + "states:\n  g: [3, 4i]\n");
    EXPECT_NEAR(std::abs(g.scenario.pure_state("g")[0] - 0.6), 0, 1e-15);
}

TEST(scenario_file, locations_are_recorded) {
    auto file = parse_scenario(shipped("cat"));
    auto loc = file.locations.at("states.alive");
    EXPECT_EQ(loc.source, "cat.scn");
    EXPECT_EQ(loc.line, 7);
    EXPECT_EQ(loc.column, 3);
    EXPECT_TRUE(file.locations.count("protocols.resurrection10"));
    EXPECT_TRUE(file.locations.count("mixtures.rho_cat"));
}

TEST(scenario_file, non_orthogonal_measurement_states) {
    // <s|t> = 0.1 exactly for real unit vectors with these components.
    double c = std::sqrt(1 - 0.01);
    std::string text = std::string(kHeader) + "states:\n  s: [1, 0]\n  t: [0.1, " + format_double(c) +
                       "]\nmeasurements:\n  m: {states: [s, t]}\n";
    auto e = load_error(text);
    EXPECT_EQ(e.code(), ErrorCode::ValidationError);
    EXPECT_THAT(e.detail(), HasSubstr("NotOrthogonal"));
    EXPECT_THAT(e.detail(), HasSubstr("t.scn:7:"));
}

TEST(scenario_file, bad_weights) {
    std::string text = std::string(kHeader) + "states:\n  s: [1, 0]\n  t: [0, 1]\nmixtures:\n  r: [[0.6, s], [0.6, t]]\n";
    auto e = load_error(text);
    EXPECT_EQ(e.code(), ErrorCode::ValidationError);
    EXPECT_THAT(e.detail(), HasSubstr("BadWeights"));
}

TEST(scenario_file, undeclared_names) {
    auto e = load_error(std::string(kHeader) + "measurements:\n  m: {states: [nope]}\n");
    EXPECT_EQ(e.code(), ErrorCode::ValidationError);
    EXPECT_THAT(e.detail(), HasSubstr("UnknownName"));
    auto p = load_error(std::string(kHeader) + "protocols:\n  p: [{measure: ghost}]\n");
    EXPECT_THAT(p.detail(), HasSubstr("UnknownName"));
    EXPECT_THAT(p.detail(), HasSubstr("t.scn:4:"));
    // Mixtures may only draw on states declared above them.
    auto m = load_error(std::string(kHeader) + "mixtures:\n  r: [[1, later]]\nstates:\n  later: [1, 0]\n");
    EXPECT_THAT(m.detail(), HasSubstr("UnknownName"));
}

TEST(scenario_file, structural_errors) {
    EXPECT_EQ(load_error("space: [unterminated\n").code(), ErrorCode::ParseError);
    EXPECT_EQ(load_error("states: {}\n").code(), ErrorCode::ParseError);
    auto unknown = load_error(std::string(kHeader) + "extras: 1\n");
    EXPECT_EQ(unknown.code(), ErrorCode::ParseError);
    EXPECT_THAT(unknown.detail(), HasSubstr("t.scn:3:1"));
    EXPECT_EQ(load_error(std::string(kHeader) + "states:\n  s: [1, \"1+\"]\n").code(), ErrorCode::ParseError);
    EXPECT_EQ(load_error(std::string(kHeader) + "states:\n  s: [1, 0, 0]\n").code(), ErrorCode::ValidationError);
    EXPECT_EQ(load_error(std::string(kHeader) + "states:\n  s: [0, 0]\n").code(), ErrorCode::ValidationError);
    EXPECT_EQ(load_error("space:\n  labels: [a]\n").code(), ErrorCode::ValidationError);
    EXPECT_EQ(load_error(std::string(kHeader) + "states:\n  s: [1, 0]\nmixtures:\n  s: [[1, s]]\n").code(),
              ErrorCode::ValidationError);
    EXPECT_EQ(load_error(std::string(kHeader) + "protocols:\n  p: [{repeat: -1, steps: []}]\n").code(),
              ErrorCode::ParseError);
}

TEST(scenario_file, forbidden_pairs_must_be_orthogonal) {
    auto e = load_error(std::string(kHeader) + "states:\n  s: [1, 0]\n  t: [1, 1]\nforbidden:\n  - [s, t]\n");
    EXPECT_THAT(e.detail(), HasSubstr("NotOrthogonal"));
}

TEST(scenario_file, protocol_depth_ceiling) {
    auto e = load_error(std::string(kHeader) +
                        "states:\n  s: [1, 0]\nmeasurements:\n  m: {states: [s]}\n"
                        "protocols:\n  p: [{repeat: 65, steps: [{measure: m}]}]\n");
    EXPECT_THAT(e.detail(), HasSubstr("DepthCeiling"));
}

TEST(scenario_file, projector_measurements) {
    std::string text = std::string(kHeader) +
                       "measurements:\n  m:\n    projectors:\n      first: [[1, 0], [0, 0]]\n";
    auto file = parse_scenario_text(text);
    const auto &m = *file.scenario.find_measurement("m");
    ASSERT_EQ(m.size(), 2u);
    EXPECT_EQ(m.outcomes()[1].label, kComplementLabel);
    auto bad = load_error(std::string(kHeader) + "measurements:\n  m:\n    projectors:\n      x: [[1, 1], [0, 0]]\n");
    EXPECT_THAT(bad.detail(), HasSubstr("InvalidOperator"));
}

TEST(json, states_round_trip_bit_exact) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 100; trial++) {
        auto space = test_util::numbered_space(2 + trial % 15);
        auto psi = test_util::random_state(rng, space);
        auto text = to_json(psi).dump();
        EXPECT_EQ(state_vector_from_json(Json::parse(text)), psi);
        auto rho = test_util::random_mixture(rng, space, 4);
        EXPECT_EQ(density_matrix_from_json(Json::parse(to_json(rho).dump())), rho);
    }
    auto composite = tensor(catalog::undecayed(), catalog::dead());
    auto back = state_vector_from_json(Json::parse(to_json(composite).dump()));
    EXPECT_EQ(back, composite);
    EXPECT_TRUE(back.space().is_product());
}

TEST(json, operators_and_records) {
    auto r = catalog::photon_rotation();
    EXPECT_EQ(operator_from_json(Json::parse(to_json(r).dump())), r);
    auto m = *build_scenario("composite").find_measurement("P_Sch+");
    auto m2 = measurement_from_json(Json::parse(to_json(m).dump()));
    ASSERT_EQ(m2.size(), m.size());
    for (std::size_t k = 0; k < m.size(); k++) {
        EXPECT_EQ(m2.outcomes()[k].label, m.outcomes()[k].label);
        EXPECT_EQ(m2.outcomes()[k].projector, m.outcomes()[k].projector);
    }
    auto records = outcome_distribution(*build_scenario("cat").find_measurement("P_L"), catalog::alive());
    auto again = outcome_records_from_json(Json::parse(to_json(records).dump()));
    ASSERT_EQ(again.size(), 2u);
    EXPECT_EQ(again[0].probability, records[0].probability);
    EXPECT_EQ(again[0].post_state, records[0].post_state);
    EXPECT_FALSE(again[1].post_state);
}

TEST(json, layout) {
    auto j = to_json(catalog::cat_plus());
    EXPECT_EQ(j.dump(), R"({"labels":["alive","dead"],"kind":"pure","re":[0.7071067811865475,0.7071067811865475],"im":[0.0,0.0]})");
    EXPECT_THROW(state_vector_from_json(Json::parse(R"({"labels":["a","b"],"kind":"pure","re":[1],"im":[0]})")),
                 CatlabError);
    EXPECT_THROW(state_vector_from_json(Json::parse(R"({"labels":["a","b"],"kind":"pure","re":[1,1],"im":[0,0]})")),
                 CatlabError);
}

TEST(json, verdict_lists_witness_steps) {
    auto lab = build_scenario("cat").lab;
    auto v = nogo_verdict(lab, projector_from_state(catalog::cat_plus()), catalog::alive(), catalog::dead());
    auto j = to_json(v);
    EXPECT_EQ(j["violated"], true);
    EXPECT_EQ(j["witness"]["steps"][0]["operation"], "P_S");
    EXPECT_EQ(j["witness"]["steps"][1]["outcome"], "alive");
    EXPECT_EQ(j["witness"]["probability"].get<double>(), v.witness->probability);
}
