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

#include "catlab/serialize.h"

#include "catlab/error.h"

namespace catlab {

namespace {

void put_complex(Json &out, std::span<const Complex> values) {
    Json re = Json::array();
    Json im = Json::array();
    for (auto z : values) {
        re.push_back(z.real());
        im.push_back(z.imag());
    }
    out["re"] = std::move(re);
    out["im"] = std::move(im);
}

const Json &field(const Json &j, const char *name) {
    if (!j.is_object() || !j.contains(name)) {
        throw CatlabError(ErrorCode::ParseError, std::string("missing field '") + name + "'");
    }
    return j.at(name);
}

std::vector<Complex> get_complex(const Json &j, std::size_t expected) {
    const Json &re = field(j, "re");
    const Json &im = field(j, "im");
    if (!re.is_array() || !im.is_array() || re.size() != expected || im.size() != expected) {
        throw CatlabError(ErrorCode::ParseError,
                          "'re' and 'im' must be arrays of " + std::to_string(expected) + " numbers");
    }
    std::vector<Complex> out;
    out.reserve(expected);
    for (std::size_t k = 0; k < expected; k++) {
        if (!re[k].is_number() || !im[k].is_number()) {
            throw CatlabError(ErrorCode::ParseError, "non-numeric amplitude at index " + std::to_string(k));
        }
        out.emplace_back(re[k].get<double>(), im[k].get<double>());
    }
    return out;
}

std::string get_string(const Json &j, const char *name) {
    const Json &v = field(j, name);
    if (!v.is_string()) {
        throw CatlabError(ErrorCode::ParseError, std::string("field '") + name + "' must be a string");
    }
    return v.get<std::string>();
}

Matrix get_matrix(const Json &j, const HilbertSpace &space) {
    return Matrix(space.dim(), get_complex(j, space.dim() * space.dim()));
}

}  // namespace

Json to_json(const HilbertSpace &space) {
    Json out;
    out["labels"] = space.labels();
    if (space.is_product()) {
        out["factors"] = space.factors();
    }
    return out;
}

Json to_json(const StateVector &psi) {
    Json out = to_json(psi.space());
    out["kind"] = "pure";
    put_complex(out, psi.amps());
    return out;
}

Json to_json(const DensityMatrix &rho) {
    Json out = to_json(rho.space());
    out["kind"] = "mixed";
    put_complex(out, rho.matrix().data());
    return out;
}

Json to_json(const QuantumState &x) {
    return std::visit([](const auto &s) { return to_json(s); }, x);
}

Json to_json(const Operator &op) {
    Json out = to_json(op.space());
    out["kind"] = std::string(operator_kind_name(op.kind()));
    put_complex(out, op.matrix().data());
    return out;
}

Json to_json(const ProjectiveMeasurement &m) {
    Json out = to_json(m.space());
    Json outcomes = Json::array();
    for (const auto &o : m.outcomes()) {
        Json item;
        item["label"] = o.label;
        put_complex(item, o.projector.matrix().data());
        outcomes.push_back(std::move(item));
    }
    out["outcomes"] = std::move(outcomes);
    return out;
}

Json to_json(const std::vector<OutcomeRecord> &records) {
    Json out = Json::array();
    for (const auto &r : records) {
        Json item;
        item["label"] = r.label;
        item["probability"] = r.probability;
        item["post_state"] = r.post_state ? to_json(*r.post_state) : Json(nullptr);
        out.push_back(std::move(item));
    }
    return out;
}

Json to_json(const SteeringPath &path) {
    Json steps = Json::array();
    for (const auto &s : path.steps) {
        steps.push_back(Json{{"operation", s.operation}, {"outcome", s.outcome}});
    }
    Json out;
    out["steps"] = std::move(steps);
    out["probability"] = path.probability;
    out["final_state"] = to_json(path.final_state);
    return out;
}

Json to_json(const NoGoVerdict &verdict) {
    Json out;
    out["operator"] = verdict.operator_name;
    out["violated"] = verdict.violated;
    out["bound_reached"] = verdict.bound_reached;
    out["witness"] = verdict.witness ? to_json(*verdict.witness) : Json(nullptr);
    return out;
}

Json to_json(const OutcomeTree &tree) {
    Json nodes = Json::array();
    for (const auto &n : tree.nodes()) {
        Json item;
        item["label"] = n.label;
        item["branch_probability"] = n.branch_probability;
        item["cumulative_probability"] = n.cumulative_probability;
        item["state"] = to_json(n.state);
        item["children"] = n.children;
        item["halted"] = n.halted;
        nodes.push_back(std::move(item));
    }
    Json out;
    out["nodes"] = std::move(nodes);
    out["leaves"] = tree.leaves();
    out["pruned_mass"] = tree.pruned_mass();
    return out;
}

Json to_json(const Histogram &histogram) {
    Json bins = Json::array();
    for (const auto &b : histogram.bins) {
        Json item;
        item["state"] = to_json(b.state);
        item["count"] = b.count;
        item["frequency"] = b.probability;
        bins.push_back(std::move(item));
    }
    Json out;
    out["trials"] = histogram.trials;
    out["seed"] = histogram.seed;
    out["bins"] = std::move(bins);
    return out;
}

Json to_json(const ChiSquareResult &result) {
    Json out;
    // An infinite statistic (impossible observation) dumps as null.
    out["statistic"] = result.statistic;
    out["degrees_of_freedom"] = result.degrees_of_freedom;
    out["p_value"] = result.p_value;
    return out;
}

Json to_json(const DiscriminationReport &report) {
    Json outcomes = Json::array();
    double n = static_cast<double>(report.trials);
    for (std::size_t k = 0; k < report.dist_a.size(); k++) {
        Json item;
        item["label"] = report.dist_a[k].label;
        item["p_a"] = report.dist_a[k].probability;
        item["p_b"] = report.dist_b[k].probability;
        item["count_a"] = report.counts_a[k];
        item["count_b"] = report.counts_b[k];
        item["freq_a"] = static_cast<double>(report.counts_a[k]) / n;
        item["freq_b"] = static_cast<double>(report.counts_b[k]) / n;
        outcomes.push_back(std::move(item));
    }
    Json out;
    out["measurement"] = report.measurement;
    out["trials"] = report.trials;
    out["seed"] = report.seed;
    out["total_variation"] = report.total_variation;
    out["outcomes"] = std::move(outcomes);
    out["fit_b_to_a"] = to_json(report.fit_b_to_a);
    return out;
}

HilbertSpace space_from_json(const Json &j) {
    if (j.is_object() && j.contains("factors")) {
        try {
            return HilbertSpace::from_factors(j.at("factors").get<std::vector<std::vector<std::string>>>());
        } catch (const nlohmann::json::exception &e) {
            throw CatlabError(ErrorCode::ParseError, std::string("bad 'factors': ") + e.what());
        }
    }
    try {
        return HilbertSpace(field(j, "labels").get<std::vector<std::string>>());
    } catch (const nlohmann::json::exception &e) {
        throw CatlabError(ErrorCode::ParseError, std::string("bad 'labels': ") + e.what());
    }
}

StateVector state_vector_from_json(const Json &j) {
    if (get_string(j, "kind") != "pure") {
        throw CatlabError(ErrorCode::ParseError, "expected kind 'pure'");
    }
    auto space = space_from_json(j);
    auto amps = get_complex(j, space.dim());
    return StateVector::from_normalized(std::move(space), std::move(amps));
}

DensityMatrix density_matrix_from_json(const Json &j) {
    if (get_string(j, "kind") != "mixed") {
        throw CatlabError(ErrorCode::ParseError, "expected kind 'mixed'");
    }
    auto space = space_from_json(j);
    auto mat = get_matrix(j, space);
    return DensityMatrix::from_matrix(std::move(space), std::move(mat));
}

QuantumState quantum_state_from_json(const Json &j) {
    if (get_string(j, "kind") == "pure") {
        return state_vector_from_json(j);
    }
    return density_matrix_from_json(j);
}

Operator operator_from_json(const Json &j) {
    auto kind = get_string(j, "kind");
    auto space = space_from_json(j);
    auto mat = get_matrix(j, space);
    if (kind == operator_kind_name(OperatorKind::Projector)) {
        return Operator::projector(std::move(space), std::move(mat));
    }
    if (kind == operator_kind_name(OperatorKind::Unitary)) {
        return Operator::unitary(std::move(space), std::move(mat));
    }
    if (kind == operator_kind_name(OperatorKind::General)) {
        return Operator::general(std::move(space), std::move(mat));
    }
    throw CatlabError(ErrorCode::ParseError, "unknown operator kind '" + kind + "'");
}

ProjectiveMeasurement measurement_from_json(const Json &j) {
    auto space = space_from_json(j);
    const Json &items = field(j, "outcomes");
    if (!items.is_array()) {
        throw CatlabError(ErrorCode::ParseError, "'outcomes' must be an array");
    }
    std::vector<Outcome> outcomes;
    for (const auto &item : items) {
        outcomes.push_back({get_string(item, "label"), Operator::projector(space, get_matrix(item, space))});
    }
    return ProjectiveMeasurement::from_projectors(space, std::move(outcomes));
}

std::vector<OutcomeRecord> outcome_records_from_json(const Json &j) {
    if (!j.is_array()) {
        throw CatlabError(ErrorCode::ParseError, "outcome records must be an array");
    }
    std::vector<OutcomeRecord> out;
    for (const auto &item : j) {
        const Json &p = field(item, "probability");
        if (!p.is_number()) {
            throw CatlabError(ErrorCode::ParseError, "'probability' must be a number");
        }
        OutcomeRecord r{get_string(item, "label"), p.get<double>(), std::nullopt};
        const Json &post = field(item, "post_state");
        if (!post.is_null()) {
            r.post_state = quantum_state_from_json(post);
        }
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace catlab
