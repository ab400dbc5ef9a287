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

#include "catlab/measure.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "catlab/error.h"

namespace catlab {

ProjectiveMeasurement ProjectiveMeasurement::from_states(std::span<const StateVector> states,
                                                         std::vector<std::string> labels) {
    if (states.empty()) {
        throw CatlabError(ErrorCode::ValidationError, "measurement needs at least one state");
    }
    if (states.size() != labels.size()) {
        throw CatlabError(ErrorCode::ValidationError, "measurement has " + std::to_string(states.size()) +
                                                          " states but " + std::to_string(labels.size()) +
                                                          " labels");
    }
    const auto &space = states.front().space();
    if (states.size() > space.dim()) {
        throw CatlabError(ErrorCode::NotOrthogonal, "more measurement states than the space dimension");
    }
    for (std::size_t i = 0; i < states.size(); i++) {
        if (!(states[i].space() == space)) {
            throw CatlabError(ErrorCode::DimensionMismatch, "measurement states live in different spaces");
        }
        for (std::size_t j = 0; j < i; j++) {
            double ov = std::abs(inner(states[i].amps(), states[j].amps()));
            if (ov > 1e-9) {
                throw CatlabError(ErrorCode::NotOrthogonal,
                                  "states '" + labels[j] + "' and '" + labels[i] + "' overlap");
            }
        }
    }
    std::vector<Outcome> outcomes;
    for (std::size_t i = 0; i < states.size(); i++) {
        outcomes.push_back({std::move(labels[i]), projector_from_state(states[i])});
    }
    return from_projectors(space, std::move(outcomes));
}

ProjectiveMeasurement ProjectiveMeasurement::from_projectors(const HilbertSpace &space,
                                                             std::vector<Outcome> outcomes) {
    if (outcomes.empty()) {
        throw CatlabError(ErrorCode::ValidationError, "measurement needs at least one outcome");
    }
    std::set<std::string_view> seen;
    Matrix sum(space.dim());
    for (const auto &o : outcomes) {
        if (o.label.empty() || !seen.insert(o.label).second) {
            throw CatlabError(ErrorCode::ValidationError, "outcome labels must be nonempty and distinct");
        }
        if (!(o.projector.space() == space)) {
            throw CatlabError(ErrorCode::DimensionMismatch, "outcome '" + o.label + "' lives in another space");
        }
        if (o.projector.kind() != OperatorKind::Projector) {
            throw CatlabError(ErrorCode::InvalidOperator, "outcome '" + o.label + "' is not a projector");
        }
        if (o.projector.matrix().trace().real() < 0.5) {
            throw CatlabError(ErrorCode::InvalidOperator, "outcome '" + o.label + "' has a zero projector");
        }
        sum += o.projector.matrix();
    }
    for (std::size_t i = 0; i < outcomes.size(); i++) {
        for (std::size_t j = 0; j < i; j++) {
            Matrix prod = outcomes[i].projector.matrix() * outcomes[j].projector.matrix();
            if (prod.max_abs_diff(Matrix(space.dim())) >= kTolerance) {
                throw CatlabError(ErrorCode::NotOrthogonal, "projectors '" + outcomes[j].label + "' and '" +
                                                                outcomes[i].label + "' are not orthogonal");
            }
        }
    }
    Matrix rest = Matrix::identity(space.dim()) - sum;
    if (rest.max_abs_diff(Matrix(space.dim())) >= kTolerance) {
        if (seen.count(kComplementLabel)) {
            throw CatlabError(ErrorCode::ValidationError, "incomplete measurement already uses the label '⊥'");
        }
        outcomes.push_back({std::string(kComplementLabel), Operator::projector(space, std::move(rest))});
    }
    return ProjectiveMeasurement(space, std::move(outcomes));
}

const Outcome *ProjectiveMeasurement::find(std::string_view label) const {
    for (const auto &o : outcomes_) {
        if (o.label == label) {
            return &o;
        }
    }
    return nullptr;
}

std::vector<OutcomeRecord> outcome_distribution(const ProjectiveMeasurement &m, const QuantumState &x) {
    if (!(space_of(x) == m.space())) {
        throw CatlabError(ErrorCode::DimensionMismatch, "state and measurement live in different spaces");
    }
    std::vector<OutcomeRecord> records;
    records.reserve(m.size());
    for (const auto &o : m.outcomes()) {
        const Matrix &p = o.projector.matrix();
        OutcomeRecord rec{o.label, 0.0, std::nullopt};
        if (const auto *psi = std::get_if<StateVector>(&x)) {
            Amplitudes projected = p.apply(psi->amps());
            rec.probability = std::clamp(norm_squared(projected), 0.0, 1.0);
            if (rec.probability >= kNegligible) {
                rec.post_state = make_state(psi->space(), projected);
            }
        } else {
            const auto &rho = std::get<DensityMatrix>(x);
            Matrix updated = p * rho.matrix() * p;
            double prob = updated.trace().real();
            rec.probability = std::clamp(prob, 0.0, 1.0);
            if (rec.probability >= kNegligible) {
                Matrix sym = (updated + updated.adjoint()) * Complex(0.5 / prob);
                rec.post_state = DensityMatrix::from_matrix(rho.space(), std::move(sym));
            }
        }
        records.push_back(std::move(rec));
    }
    return records;
}

std::size_t pick_outcome(std::span<const OutcomeRecord> records, double u) {
    double cumulative = 0;
    std::size_t last = records.size();
    for (std::size_t k = 0; k < records.size(); k++) {
        if (!records[k].post_state) {
            continue;
        }
        last = k;
        cumulative += records[k].probability;
        if (u < cumulative) {
            return k;
        }
    }
    if (last == records.size()) {
        throw CatlabError(ErrorCode::InvalidState, "no outcome has nonzero probability");
    }
    return last;
}

SampledOutcome sample_outcome(const ProjectiveMeasurement &m, const QuantumState &x, RandomStream &rng) {
    auto records = outcome_distribution(m, x);
    std::size_t k = pick_outcome(records, rng.next_uniform());
    return {k, records[k].label, std::move(*records[k].post_state)};
}

double total_variation(std::span<const OutcomeRecord> a, std::span<const OutcomeRecord> b) {
    std::map<std::string_view, double> diff;
    for (const auto &r : a) {
        diff[r.label] += r.probability;
    }
    for (const auto &r : b) {
        diff[r.label] -= r.probability;
    }
    double tv = 0;
    for (const auto &[label, d] : diff) {
        tv += std::abs(d);
    }
    return tv / 2;
}

}  // namespace catlab
