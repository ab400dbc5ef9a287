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

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "catlab/random_stream.h"
#include "catlab/state.h"

namespace catlab {

/// Label of the outcome appended when declared projectors do not sum to I.
inline constexpr std::string_view kComplementLabel = "⊥";

struct Outcome {
    std::string label;
    Operator projector;
};

/// A complete set of mutually orthogonal projectors with distinct labels.
class ProjectiveMeasurement {
   public:
    /// One rank-1 projector per state, plus "⊥" = I - sum P_i if incomplete.
    /// Throws NotOrthogonal if any |<psi_i|psi_j>| > 1e-9.
    static ProjectiveMeasurement from_states(std::span<const StateVector> states, std::vector<std::string> labels);
    /// Validates orthogonality and idempotence, then auto-completes with "⊥".
    static ProjectiveMeasurement from_projectors(const HilbertSpace &space, std::vector<Outcome> outcomes);

    const HilbertSpace &space() const {
        return space_;
    }
    const std::vector<Outcome> &outcomes() const {
        return outcomes_;
    }
    std::size_t size() const {
        return outcomes_.size();
    }
    const Outcome *find(std::string_view label) const;

   private:
    ProjectiveMeasurement(HilbertSpace space, std::vector<Outcome> outcomes)
        : space_(std::move(space)), outcomes_(std::move(outcomes)) {
    }

    HilbertSpace space_;
    std::vector<Outcome> outcomes_;
};

struct OutcomeRecord {
    std::string label;
    double probability;
    /// Absent when probability < kNegligible.
    std::optional<QuantumState> post_state;
};

/// Born probabilities and Lüders post-measurement states, in outcome order.
std::vector<OutcomeRecord> outcome_distribution(const ProjectiveMeasurement &m, const QuantumState &x);

struct SampledOutcome {
    std::size_t index;
    std::string label;
    QuantumState post_state;
};

/// Inverse-CDF draw from outcome_distribution using one uniform from `rng`.
SampledOutcome sample_outcome(const ProjectiveMeasurement &m, const QuantumState &x, RandomStream &rng);

/// Inverse-CDF pick over `records` for the uniform `u`; skips pruned entries.
std::size_t pick_outcome(std::span<const OutcomeRecord> records, double u);

/// 1/2 sum |p_i - q_i|, matching entries by label.
double total_variation(std::span<const OutcomeRecord> a, std::span<const OutcomeRecord> b);

}  // namespace catlab
