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
#include <iomanip>
#include <openssl/evp.h>
#include <set>
#include <sstream>
#include <type_traits>
#include <yaml-cpp/yaml.h>

#include "catlab/complex_text.h"
#include "catlab/error.h"

namespace catlab {

std::string SourceLocation::str() const {
    return source + ":" + std::to_string(line) + ":" + std::to_string(column);
}

std::string sha256_hex(std::string_view bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("SHA-256 digest failed");
    }
    std::ostringstream out;
    for (unsigned int k = 0; k < length; k++) {
        out << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[k]);
    }
    return out.str();
}

namespace {

const std::set<std::string> kSections{"name",         "space",     "states",    "mixtures",
                                      "measurements", "unitaries", "forbidden", "protocols"};

class Loader {
   public:
    explicit Loader(std::string source) : source_(std::move(source)) {
    }

    ScenarioFile load(const YAML::Node &root) {
        if (!root.IsMap()) {
            fail(root, "document must be a mapping of sections");
        }
        for (const auto &item : root) {
            auto key = item.first.Scalar();
            if (!kSections.count(key)) {
                fail(item.first, "unknown section '" + key + "'");
            }
        }
        std::string name;
        // Sections load in document order, so a name is usable only below its declaration.
        for (const auto &item : root) {
            auto key = item.first.Scalar();
            if (key == "name") {
                name = scalar(item.second);
                continue;
            }
            if (key == "space") {
                if (space_) {
                    fail(item.first, "'space' declared twice");
                }
                space_ = load_space(item.second);
                continue;
            }
            if (!space_) {
                fail(item.first, "'space' must come before '" + key + "'");
            }
            if (key == "states") {
                load_states(item.second);
            } else if (key == "mixtures") {
                load_mixtures(item.second);
            } else if (key == "measurements") {
                load_measurements(item.second);
            } else if (key == "unitaries") {
                load_unitaries(item.second);
            } else if (key == "forbidden") {
                load_forbidden(item.second);
            } else {
                load_protocols(item.second);
            }
        }
        if (!space_) {
            fail(root, "missing 'space' section");
        }

        std::vector<NamedMeasurement> allowed;
        for (const auto &m : measurements_) {
            if (!candidates_.count(m.name)) {
                allowed.push_back(m);
            }
        }
        auto lab = validated(root, [&] {
            return Laboratory(*space_, std::move(allowed), std::move(unitaries_), std::move(forbidden_));
        });
        ScenarioFile out{Scenario{std::move(name), std::move(lab), std::move(states_), std::move(measurements_),
                                  std::move(protocols_)},
                         "", std::move(locations_)};
        return out;
    }

   private:
    SourceLocation where(const YAML::Node &node) const {
        auto mark = node.Mark();
        return {source_, mark.line + 1, mark.column + 1};
    }

    [[noreturn]] void fail(const YAML::Node &node, const std::string &message) const {
        throw CatlabError(ErrorCode::ParseError, where(node).str() + ": " + message);
    }

    /// Runs `build`, re-raising library errors as ValidationError at `node`.
    template <typename F>
    auto validated(const YAML::Node &node, F &&build) const -> std::invoke_result_t<F> {
        try {
            return build();
        } catch (const CatlabError &e) {
            if (e.code() == ErrorCode::ParseError || e.code() == ErrorCode::ValidationError) {
                throw;
            }
            throw CatlabError(ErrorCode::ValidationError,
                              where(node).str() + ": " + std::string(error_code_name(e.code())) + ": " + e.detail());
        }
    }

    [[noreturn]] void invalid(const YAML::Node &node, ErrorCode cause, const std::string &message) const {
        throw CatlabError(ErrorCode::ValidationError,
                          where(node).str() + ": " + std::string(error_code_name(cause)) + ": " + message);
    }

    std::string scalar(const YAML::Node &node) const {
        if (!node.IsScalar()) {
            fail(node, "expected a scalar");
        }
        return node.Scalar();
    }

    Complex number(const YAML::Node &node) const {
        auto text = scalar(node);
        try {
            return parse_complex(text);
        } catch (const CatlabError &e) {
            fail(node, e.detail());
        }
    }

    double real_number(const YAML::Node &node) const {
        Complex z = number(node);
        if (z.imag() != 0) {
            fail(node, "expected a real number");
        }
        return z.real();
    }

    std::vector<std::string> names(const YAML::Node &node) const {
        if (!node.IsSequence()) {
            fail(node, "expected a list of names");
        }
        std::vector<std::string> out;
        for (const auto &item : node) {
            out.push_back(scalar(item));
        }
        return out;
    }

    const YAML::Node &require_map(const YAML::Node &node, const std::string &what) const {
        if (!node.IsMap()) {
            fail(node, what + " must be a mapping");
        }
        return node;
    }

    void declare(const std::string &section, const std::string &name, const YAML::Node &node) {
        if (!locations_.emplace(section + "." + name, where(node)).second) {
            invalid(node, ErrorCode::ValidationError, "duplicate " + section + " entry '" + name + "'");
        }
    }

    HilbertSpace load_space(const YAML::Node &node) {
        require_map(node, "'space'");
        locations_.emplace("space", where(node));
        if (node["factors"]) {
            const auto &factors = node["factors"];
            if (!factors.IsSequence()) {
                fail(factors, "'factors' must be a list of label lists");
            }
            std::vector<std::vector<std::string>> lists;
            for (const auto &f : factors) {
                lists.push_back(names(f));
            }
            return validated(factors, [&] { return HilbertSpace::from_factors(lists); });
        }
        if (!node["labels"]) {
            fail(node, "'space' needs 'labels' or 'factors'");
        }
        auto labels = names(node["labels"]);
        return validated(node["labels"], [&] { return HilbertSpace(labels); });
    }

    const NamedState *find_state(const std::string &name) const {
        for (const auto &s : states_) {
            if (s.name == name) {
                return &s;
            }
        }
        return nullptr;
    }

    const StateVector &pure_state(const YAML::Node &node) const {
        auto name = scalar(node);
        const auto *s = find_state(name);
        if (!s) {
            invalid(node, ErrorCode::UnknownName, "no state named '" + name + "' declared before this point");
        }
        const auto *psi = std::get_if<StateVector>(&s->state);
        if (!psi) {
            invalid(node, ErrorCode::InvalidState, "'" + name + "' is mixed where a pure state is required");
        }
        return *psi;
    }

    void add_state(const std::string &name, const YAML::Node &node, QuantumState state) {
        if (find_state(name)) {
            invalid(node, ErrorCode::ValidationError, "duplicate state name '" + name + "'");
        }
        locations_.emplace((std::holds_alternative<StateVector>(state) ? "states." : "mixtures.") + name, where(node));
        states_.push_back({name, std::move(state)});
    }

    void load_states(const YAML::Node &section) {
        if (!section || section.IsNull()) {
            return;
        }
        require_map(section, "'states'");
        for (const auto &item : section) {
            auto name = scalar(item.first);
            const auto &body = item.second;
            Amplitudes amps(space_->dim(), 0.0);
            if (body.IsSequence()) {
                if (body.size() != space_->dim()) {
                    invalid(body, ErrorCode::DimensionMismatch,
                            "state '" + name + "' has " + std::to_string(body.size()) + " amplitudes, space has " +
                                std::to_string(space_->dim()));
                }
                for (std::size_t k = 0; k < amps.size(); k++) {
                    amps[k] = number(body[k]);
                }
            } else if (body.IsMap()) {
                for (const auto &entry : body) {
                    auto label = scalar(entry.first);
                    std::size_t index = validated(entry.first, [&] { return space_->index_of(label); });
                    amps[index] = number(entry.second);
                }
            } else {
                fail(body, "state '" + name + "' must be an amplitude list or a label-to-amplitude mapping");
            }
            add_state(name, item.first, validated(body, [&] { return to_state(amps); }));
        }
    }

    /// Amplitudes already normalized to within tolerance are kept bit-for-bit.
    StateVector to_state(const Amplitudes &amps) const {
        if (std::abs(norm_squared(amps) - 1) < kTolerance) {
            return StateVector::from_normalized(*space_, amps);
        }
        return make_state(*space_, amps);
    }

    Matrix load_matrix(const YAML::Node &node) const {
        std::size_t d = space_->dim();
        if (!node.IsSequence() || node.size() != d) {
            invalid(node, ErrorCode::DimensionMismatch, "matrix must have " + std::to_string(d) + " rows");
        }
        std::vector<Complex> values;
        for (const auto &row : node) {
            if (!row.IsSequence() || row.size() != d) {
                invalid(row, ErrorCode::DimensionMismatch, "matrix rows must have " + std::to_string(d) + " entries");
            }
            for (const auto &entry : row) {
                values.push_back(number(entry));
            }
        }
        return Matrix(d, std::move(values));
    }

    void load_mixtures(const YAML::Node &section) {
        if (!section || section.IsNull()) {
            return;
        }
        require_map(section, "'mixtures'");
        for (const auto &item : section) {
            auto name = scalar(item.first);
            const auto &body = item.second;
            if (body.IsMap()) {
                if (!body["density"]) {
                    fail(body, "mixture '" + name + "' needs 'density' or a weighted state list");
                }
                auto mat = load_matrix(body["density"]);
                add_state(name, item.first,
                          validated(body, [&] { return DensityMatrix::from_matrix(*space_, std::move(mat)); }));
                continue;
            }
            if (!body.IsSequence()) {
                fail(body, "mixture '" + name + "' must be a list of [weight, state] pairs");
            }
            std::vector<WeightedState> parts;
            for (const auto &pair : body) {
                if (!pair.IsSequence() || pair.size() != 2) {
                    fail(pair, "mixture entries are [weight, state] pairs");
                }
                parts.push_back({real_number(pair[0]), pure_state(pair[1])});
            }
            add_state(name, item.first, validated(body, [&] { return make_mixture(parts); }));
        }
    }

    void load_measurements(const YAML::Node &section) {
        if (!section || section.IsNull()) {
            return;
        }
        require_map(section, "'measurements'");
        for (const auto &item : section) {
            auto name = scalar(item.first);
            const auto &body = require_map(item.second, "measurement '" + name + "'");
            declare("measurements", name, item.first);
            for (const auto &field : body) {
                auto key = scalar(field.first);
                if (key != "states" && key != "labels" && key != "projectors" && key != "candidate") {
                    fail(field.first, "unknown measurement field '" + key + "'");
                }
            }
            ProjectiveMeasurement m = [&] {
                if (body["states"]) {
                    std::vector<StateVector> states;
                    for (const auto &s : body["states"]) {
                        states.push_back(pure_state(s));
                    }
                    auto labels = body["labels"] ? names(body["labels"]) : names(body["states"]);
                    if (labels.size() != states.size()) {
                        fail(body["labels"], "need one label per state");
                    }
                    return validated(body, [&] { return ProjectiveMeasurement::from_states(states, labels); });
                }
                if (body["projectors"]) {
                    const auto &projectors = require_map(body["projectors"], "'projectors'");
                    std::vector<Outcome> outcomes;
                    for (const auto &p : projectors) {
                        auto mat = load_matrix(p.second);
                        outcomes.push_back(
                            {scalar(p.first),
                             validated(p.second, [&] { return Operator::projector(*space_, std::move(mat)); })});
                    }
                    return validated(body,
                                     [&] { return ProjectiveMeasurement::from_projectors(*space_, std::move(outcomes)); });
                }
                fail(body, "measurement '" + name + "' needs 'states' or 'projectors'");
            }();
            if (body["candidate"] && body["candidate"].as<bool>()) {
                candidates_.insert(name);
            }
            measurements_.push_back({name, std::move(m)});
        }
    }

    void load_unitaries(const YAML::Node &section) {
        if (!section || section.IsNull()) {
            return;
        }
        require_map(section, "'unitaries'");
        for (const auto &item : section) {
            auto name = scalar(item.first);
            declare("unitaries", name, item.first);
            auto mat = load_matrix(item.second);
            unitaries_.push_back(
                {name, validated(item.second, [&] { return Operator::unitary(*space_, std::move(mat)); })});
        }
    }

    void load_forbidden(const YAML::Node &section) {
        if (!section || section.IsNull()) {
            return;
        }
        if (!section.IsSequence()) {
            fail(section, "'forbidden' must be a list of [from, to] pairs");
        }
        for (const auto &pair : section) {
            if (!pair.IsSequence() || pair.size() != 2) {
                fail(pair, "forbidden entries are [from, to] pairs");
            }
            const auto &from = pure_state(pair[0]);
            const auto &to = pure_state(pair[1]);
            // Checked here as well as by Laboratory so the error points at the pair.
            if (std::abs(inner(from.amps(), to.amps())) >= 1e-9) {
                invalid(pair, ErrorCode::NotOrthogonal, "forbidden transitions join orthogonal states");
            }
            forbidden_.push_back({from, to});
        }
    }

    bool has_measurement(const std::string &name) const {
        return std::any_of(measurements_.begin(), measurements_.end(),
                           [&](const NamedMeasurement &m) { return m.name == name; });
    }

    bool has_unitary(const std::string &name) const {
        return std::any_of(unitaries_.begin(), unitaries_.end(),
                           [&](const NamedUnitary &u) { return u.name == name; });
    }

    std::vector<ProtocolStep> load_steps(const YAML::Node &node) const {
        if (!node.IsSequence()) {
            fail(node, "protocol steps must be a list");
        }
        std::vector<ProtocolStep> steps;
        for (const auto &step : node) {
            if (!step.IsMap()) {
                fail(step, "each step is a mapping such as {measure: NAME}");
            }
            if (step["measure"]) {
                auto name = scalar(step["measure"]);
                if (!has_measurement(name)) {
                    invalid(step, ErrorCode::UnknownName, "no measurement named '" + name + "'");
                }
                steps.push_back(ProtocolStep::measure(name));
            } else if (step["unitary"]) {
                auto name = scalar(step["unitary"]);
                if (!has_unitary(name)) {
                    invalid(step, ErrorCode::UnknownName, "no unitary named '" + name + "'");
                }
                steps.push_back(ProtocolStep::unitary(name));
            } else if (step["stop_if"]) {
                steps.push_back(ProtocolStep::stop_if(scalar(step["stop_if"])));
            } else if (step["repeat"]) {
                double count = real_number(step["repeat"]);
                if (count < 0 || count != std::floor(count) || count > 1e9) {
                    fail(step["repeat"], "repeat count must be a non-negative integer");
                }
                if (!step["steps"]) {
                    fail(step, "repeat needs 'steps'");
                }
                steps.push_back(ProtocolStep::repeat(static_cast<std::size_t>(count), load_steps(step["steps"])));
            } else {
                fail(step, "unknown step; expected measure, unitary, repeat or stop_if");
            }
        }
        return steps;
    }

    void load_protocols(const YAML::Node &section) {
        if (!section || section.IsNull()) {
            return;
        }
        require_map(section, "'protocols'");
        for (const auto &item : section) {
            auto name = scalar(item.first);
            declare("protocols", name, item.first);
            ProtocolSpec spec{load_steps(item.second)};
            validated(item.second, [&] { return unroll(spec); });
            protocols_.push_back({name, std::move(spec)});
        }
    }

    std::string source_;
    std::optional<HilbertSpace> space_;
    std::vector<NamedState> states_;
    std::vector<NamedMeasurement> measurements_;
    std::set<std::string> candidates_;
    std::vector<NamedUnitary> unitaries_;
    std::vector<ForbiddenTransition> forbidden_;
    std::vector<NamedProtocol> protocols_;
    std::map<std::string, SourceLocation> locations_;
};

// ---- writing ----

void emit_matrix(YAML::Emitter &out, const Matrix &m) {
    out << YAML::BeginSeq;
    for (std::size_t r = 0; r < m.dim(); r++) {
        out << YAML::Flow << YAML::BeginSeq;
        for (std::size_t c = 0; c < m.dim(); c++) {
            out << format_complex(m(r, c));
        }
        out << YAML::EndSeq;
    }
    out << YAML::EndSeq;
}

void emit_steps(YAML::Emitter &out, const std::vector<ProtocolStep> &steps) {
    out << YAML::BeginSeq;
    for (const auto &s : steps) {
        out << YAML::BeginMap;
        switch (s.kind) {
            case ProtocolStep::Kind::Measure:
                out << YAML::Key << "measure" << YAML::Value << s.name;
                break;
            case ProtocolStep::Kind::Unitary:
                out << YAML::Key << "unitary" << YAML::Value << s.name;
                break;
            case ProtocolStep::Kind::StopIf:
                out << YAML::Key << "stop_if" << YAML::Value << s.name;
                break;
            case ProtocolStep::Kind::Repeat:
                out << YAML::Key << "repeat" << YAML::Value << s.count;
                out << YAML::Key << "steps" << YAML::Value;
                emit_steps(out, s.block);
                break;
        }
        out << YAML::EndMap;
    }
    out << YAML::EndSeq;
}

std::string state_name_for(const Scenario &scenario, const StateVector &psi) {
    for (const auto &s : scenario.states) {
        if (const auto *p = std::get_if<StateVector>(&s.state); p && *p == psi) {
            return s.name;
        }
    }
    for (const auto &s : scenario.states) {
        if (const auto *p = std::get_if<StateVector>(&s.state); p && fidelity(*p, psi) > kSameStateFidelity) {
            return s.name;
        }
    }
    throw CatlabError(ErrorCode::ValidationError, "forbidden transition refers to an undeclared state");
}

}  // namespace

ScenarioFile parse_scenario_text(std::string_view text, const std::string &source) {
    YAML::Node root;
    try {
        root = YAML::Load(std::string(text));
    } catch (const YAML::Exception &e) {
        throw CatlabError(ErrorCode::ParseError, source + ":" + std::to_string(e.mark.line + 1) + ":" +
                                                     std::to_string(e.mark.column + 1) + ": " + e.msg);
    }
    try {
        auto out = Loader(source).load(root);
        out.sha256 = sha256_hex(text);
        return out;
    } catch (const YAML::Exception &e) {
        throw CatlabError(ErrorCode::ParseError, source + ":" + std::to_string(e.mark.line + 1) + ":" +
                                                     std::to_string(e.mark.column + 1) + ": " + e.msg);
    }
}

ScenarioFile parse_scenario(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw CatlabError(ErrorCode::ParseError, "cannot read scenario file '" + path.string() + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_scenario_text(buffer.str(), path.filename().string());
}

std::string serialize_scenario(const Scenario &scenario) {
    const auto &space = scenario.lab.space();
    YAML::Emitter out;
    out << YAML::BeginMap;
    out << YAML::Key << "name" << YAML::Value << scenario.name;

    out << YAML::Key << "space" << YAML::Value << YAML::BeginMap;
    if (space.is_product()) {
        out << YAML::Key << "factors" << YAML::Value << YAML::BeginSeq;
        for (const auto &f : space.factors()) {
            out << YAML::Flow << f;
        }
        out << YAML::EndSeq;
    } else {
        out << YAML::Key << "labels" << YAML::Value << YAML::Flow << space.labels();
    }
    out << YAML::EndMap;

    bool any_pure = false;
    bool any_mixed = false;
    for (const auto &s : scenario.states) {
        (std::holds_alternative<StateVector>(s.state) ? any_pure : any_mixed) = true;
    }
    if (any_pure) {
        out << YAML::Key << "states" << YAML::Value << YAML::BeginMap;
        for (const auto &s : scenario.states) {
            if (const auto *psi = std::get_if<StateVector>(&s.state)) {
                out << YAML::Key << s.name << YAML::Value << YAML::Flow << YAML::BeginSeq;
                for (auto a : psi->amps()) {
                    out << format_complex(a);
                }
                out << YAML::EndSeq;
            }
        }
        out << YAML::EndMap;
    }
    if (any_mixed) {
        out << YAML::Key << "mixtures" << YAML::Value << YAML::BeginMap;
        for (const auto &s : scenario.states) {
            if (const auto *rho = std::get_if<DensityMatrix>(&s.state)) {
                out << YAML::Key << s.name << YAML::Value << YAML::BeginMap << YAML::Key << "density" << YAML::Value;
                emit_matrix(out, rho->matrix());
                out << YAML::EndMap;
            }
        }
        out << YAML::EndMap;
    }

    if (!scenario.measurements.empty()) {
        out << YAML::Key << "measurements" << YAML::Value << YAML::BeginMap;
        for (const auto &m : scenario.measurements) {
            out << YAML::Key << m.name << YAML::Value << YAML::BeginMap;
            out << YAML::Key << "projectors" << YAML::Value << YAML::BeginMap;
            for (const auto &o : m.measurement.outcomes()) {
                out << YAML::Key << o.label << YAML::Value;
                emit_matrix(out, o.projector.matrix());
            }
            out << YAML::EndMap;
            if (scenario.is_candidate(m.name)) {
                out << YAML::Key << "candidate" << YAML::Value << true;
            }
            out << YAML::EndMap;
        }
        out << YAML::EndMap;
    }

    if (!scenario.lab.unitaries().empty()) {
        out << YAML::Key << "unitaries" << YAML::Value << YAML::BeginMap;
        for (const auto &u : scenario.lab.unitaries()) {
            out << YAML::Key << u.name << YAML::Value;
            emit_matrix(out, u.unitary.matrix());
        }
        out << YAML::EndMap;
    }

    if (!scenario.lab.forbidden().empty()) {
        out << YAML::Key << "forbidden" << YAML::Value << YAML::BeginSeq;
        for (const auto &f : scenario.lab.forbidden()) {
            out << YAML::Flow << YAML::BeginSeq << state_name_for(scenario, f.from) << state_name_for(scenario, f.to)
                << YAML::EndSeq;
        }
        out << YAML::EndSeq;
    }

    if (!scenario.protocols.empty()) {
        out << YAML::Key << "protocols" << YAML::Value << YAML::BeginMap;
        for (const auto &p : scenario.protocols) {
            out << YAML::Key << p.name << YAML::Value;
            emit_steps(out, p.protocol.steps);
        }
        out << YAML::EndMap;
    }
    out << YAML::EndMap;
    return std::string(out.c_str()) + "\n";
}

}  // namespace catlab
