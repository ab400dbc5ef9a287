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

#include "catlab/lab.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "catlab/error.h"
#include "catlab/protocol.h"

namespace catlab {

namespace {

void require_space(const HilbertSpace &expected, const HilbertSpace &actual, const std::string &what) {
    if (!(expected == actual)) {
        throw CatlabError(ErrorCode::DimensionMismatch, what + " does not live in the laboratory's space");
    }
}

}  // namespace

Laboratory::Laboratory(HilbertSpace space,
                       std::vector<NamedMeasurement> measurements,
                       std::vector<NamedUnitary> unitaries,
                       std::vector<ForbiddenTransition> forbidden)
    : space_(std::move(space)),
      measurements_(std::move(measurements)),
      unitaries_(std::move(unitaries)),
      forbidden_(std::move(forbidden)) {
    std::set<std::string_view> names;
    auto claim = [&](const std::string &name) {
        if (name.empty() || !names.insert(name).second) {
            throw CatlabError(ErrorCode::ValidationError, "laboratory operation names must be nonempty and distinct ('" +
                                                              name + "')");
        }
    };
    for (const auto &m : measurements_) {
        claim(m.name);
        require_space(space_, m.measurement.space(), "measurement '" + m.name + "'");
    }
    for (const auto &u : unitaries_) {
        claim(u.name);
        require_space(space_, u.unitary.space(), "unitary '" + u.name + "'");
        if (u.unitary.kind() != OperatorKind::Unitary) {
            throw CatlabError(ErrorCode::InvalidOperator, "operation '" + u.name + "' is not unitary");
        }
    }
    for (const auto &t : forbidden_) {
        require_space(space_, t.from.space(), "forbidden transition state");
        require_space(space_, t.to.space(), "forbidden transition state");
        if (std::abs(inner(t.from.amps(), t.to.amps())) >= 1e-9) {
            throw CatlabError(ErrorCode::NotOrthogonal, "forbidden transition between non-orthogonal states");
        }
    }
}

Laboratory Laboratory::with_measurement(std::string name, ProjectiveMeasurement m) const {
    auto measurements = measurements_;
    measurements.push_back({std::move(name), std::move(m)});
    return Laboratory(space_, std::move(measurements), unitaries_, forbidden_);
}

const ProjectiveMeasurement *Laboratory::find_measurement(std::string_view name) const {
    for (const auto &m : measurements_) {
        if (m.name == name) {
            return &m.measurement;
        }
    }
    return nullptr;
}

const Operator *Laboratory::find_unitary(std::string_view name) const {
    for (const auto &u : unitaries_) {
        if (u.name == name) {
            return &u.unitary;
        }
    }
    return nullptr;
}

bool Laboratory::has_operation(std::string_view name) const {
    return find_measurement(name) != nullptr || find_unitary(name) != nullptr;
}

bool Laboratory::forbids(const StateVector &from, const StateVector &to) const {
    for (const auto &t : forbidden_) {
        if (fidelity(t.from, from) > kSameStateFidelity && fidelity(t.to, to) > kSameStateFidelity) {
            return true;
        }
    }
    return false;
}

bool Laboratory::can_discriminate(const StateVector &a, const StateVector &b) const {
    for (const auto &m : measurements_) {
        auto da = outcome_distribution(m.measurement, a);
        auto db = outcome_distribution(m.measurement, b);
        bool disjoint = true;
        for (std::size_t k = 0; k < da.size(); k++) {
            if (std::min(da[k].probability, db[k].probability) > 1e-9) {
                disjoint = false;
                break;
            }
        }
        if (disjoint) {
            return true;
        }
    }
    return false;
}

SteeringSearch find_steering_path(const Laboratory &lab,
                                  const StateVector &from,
                                  const StateVector &to,
                                  int max_depth,
                                  double min_prob) {
    if (max_depth < 1) {
        throw CatlabError(ErrorCode::PreconditionFailed, "max_depth must be >= 1");
    }
    if (!(min_prob > 0 && min_prob <= 1)) {
        throw CatlabError(ErrorCode::PreconditionFailed, "min_prob must lie in (0, 1]");
    }
    require_space(lab.space(), from.space(), "start state");
    require_space(lab.space(), to.space(), "target state");

    struct Node {
        StateVector state;
        double probability;
        std::size_t parent;
        SteeringStep step;
    };
    std::vector<Node> nodes;
    auto trace_path = [&](std::size_t index) {
        SteeringPath path{{}, nodes[index].probability, nodes[index].state};
        while (index != 0) {
            path.steps.push_back(nodes[index].step);
            index = nodes[index].parent;
        }
        std::reverse(path.steps.begin(), path.steps.end());
        return path;
    };

    SteeringSearch result;
    nodes.push_back({canonicalize_phase(from), 1.0, 0, {}});
    if (fidelity(from, to) > kSameStateFidelity) {
        result.path = trace_path(0);
        return result;
    }

    std::set<StateKey> visited{state_key(nodes[0].state)};
    std::vector<std::size_t> frontier{0};

    for (int depth = 1; depth <= max_depth; depth++) {
        std::vector<std::size_t> next;
        std::map<StateKey, std::size_t> layer;
        std::optional<std::size_t> goal;

        auto consider = [&](std::size_t parent, SteeringStep step, double branch_p, const StateVector &post) {
            double p = nodes[parent].probability * branch_p;
            if (p < min_prob) {
                return;
            }
            StateVector child = canonicalize_phase(post);
            if (fidelity(child, to) > kSameStateFidelity) {
                if (!goal || p > nodes[*goal].probability + 1e-12) {
                    nodes.push_back({std::move(child), p, parent, std::move(step)});
                    goal = nodes.size() - 1;
                }
                return;
            }
            StateKey key = state_key(child);
            if (visited.count(key)) {
                return;
            }
            auto it = layer.find(key);
            if (it != layer.end()) {
                Node &existing = nodes[it->second];
                if (p > existing.probability + 1e-12) {
                    existing = {std::move(child), p, parent, std::move(step)};
                }
                return;
            }
            nodes.push_back({std::move(child), p, parent, std::move(step)});
            layer.emplace(std::move(key), nodes.size() - 1);
            next.push_back(nodes.size() - 1);
        };

        for (std::size_t parent : frontier) {
            // Copy: `nodes` may reallocate while children are added.
            QuantumState here = nodes[parent].state;
            for (const auto &m : lab.measurements()) {
                for (auto &rec : outcome_distribution(m.measurement, here)) {
                    if (rec.post_state) {
                        consider(parent, {m.name, rec.label}, rec.probability, std::get<StateVector>(*rec.post_state));
                    }
                }
            }
            for (const auto &u : lab.unitaries()) {
                auto moved = apply_unitary(u.unitary, here);
                consider(parent, {u.name, u.name}, 1.0, std::get<StateVector>(moved));
            }
        }
        result.states_explored += frontier.size();

        if (goal) {
            result.path = trace_path(*goal);
            return result;
        }
        for (auto &[key, index] : layer) {
            visited.insert(key);
        }
        frontier = std::move(next);
        if (frontier.empty()) {
            return result;
        }
    }
    result.bound_reached = true;
    return result;
}

bool check_conditions(const Laboratory &lab, const StateVector &live, const StateVector &dead) {
    require_space(lab.space(), live.space(), "state L");
    require_space(lab.space(), dead.space(), "state D");
    if (std::abs(inner(live.amps(), dead.amps())) >= 1e-9) {
        return false;
    }
    return lab.forbids(dead, live) && lab.can_discriminate(live, dead);
}

double total_reach_probability(const Laboratory &lab,
                               const StateVector &from,
                               const StateVector &to,
                               const ProtocolSpec &protocol) {
    require_space(lab.space(), from.space(), "start state");
    require_space(lab.space(), to.space(), "target state");
    return leaf_mass(enumerate(protocol, lab, from), to);
}

NoGoVerdict nogo_verdict(const Laboratory &lab,
                         const Operator &candidate,
                         const StateVector &live,
                         const StateVector &dead,
                         int max_depth,
                         std::string operator_name) {
    if (candidate.kind() != OperatorKind::Projector) {
        throw CatlabError(ErrorCode::PreconditionFailed, "candidate '" + operator_name + "' is not a projector");
    }
    if (!check_conditions(lab, live, dead)) {
        throw CatlabError(ErrorCode::PreconditionFailed,
                          "L and D must be orthogonal, discriminable in the lab, and D -> L must be forbidden");
    }
    std::string name(kCandidateMeasurementName);
    while (lab.has_operation(name)) {
        name += "'";
    }
    auto m = ProjectiveMeasurement::from_projectors(lab.space(), {{std::string(kCandidateOutcomeLabel), candidate}});
    auto extended = lab.with_measurement(name, std::move(m));
    auto search = find_steering_path(extended, dead, live, max_depth);

    NoGoVerdict verdict;
    verdict.operator_name = std::move(operator_name);
    verdict.violated = search.path.has_value();
    verdict.witness = std::move(search.path);
    verdict.bound_reached = search.bound_reached;
    return verdict;
}

}  // namespace catlab
