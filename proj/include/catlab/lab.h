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
#include <string>
#include <string_view>
#include <vector>

#include "catlab/measure.h"
#include "catlab/state.h"

namespace catlab {

struct ProtocolSpec;

inline constexpr int kDefaultMaxDepth = 8;
inline constexpr double kDefaultMinProb = 1e-12;
/// Squared overlap above which two pure states count as the same state.
inline constexpr double kSameStateFidelity = 1 - 1e-9;

struct NamedMeasurement {
    std::string name;
    ProjectiveMeasurement measurement;
};

struct NamedUnitary {
    std::string name;
    Operator unitary;
};

/// A declared impossible evolution `from` -> `to`.
struct ForbiddenTransition {
    StateVector from;
    StateVector to;
};

/// The operations a laboratory can perform and the evolutions it cannot.
class Laboratory {
   public:
    /// Throws DimensionMismatch for members outside `space`, ValidationError for
    /// duplicate names, InvalidOperator for non-unitary members, and
    /// NotOrthogonal for forbidden pairs with |<from|to>| >= 1e-9.
    Laboratory(HilbertSpace space,
               std::vector<NamedMeasurement> measurements,
               std::vector<NamedUnitary> unitaries = {},
               std::vector<ForbiddenTransition> forbidden = {});

    /// Copy with one more measurement appended after the declared ones.
    Laboratory with_measurement(std::string name, ProjectiveMeasurement m) const;

    const HilbertSpace &space() const {
        return space_;
    }
    const std::vector<NamedMeasurement> &measurements() const {
        return measurements_;
    }
    const std::vector<NamedUnitary> &unitaries() const {
        return unitaries_;
    }
    const std::vector<ForbiddenTransition> &forbidden() const {
        return forbidden_;
    }

    const ProjectiveMeasurement *find_measurement(std::string_view name) const;
    const Operator *find_unitary(std::string_view name) const;
    bool has_operation(std::string_view name) const;
    /// Whether (from -> to) is declared forbidden, comparing states up to phase.
    bool forbids(const StateVector &from, const StateVector &to) const;
    /// Whether some allowed measurement separates `a` and `b` with certainty.
    bool can_discriminate(const StateVector &a, const StateVector &b) const;

   private:
    HilbertSpace space_;
    std::vector<NamedMeasurement> measurements_;
    std::vector<NamedUnitary> unitaries_;
    std::vector<ForbiddenTransition> forbidden_;
};

struct SteeringStep {
    std::string operation;
    std::string outcome;

    bool operator==(const SteeringStep &) const = default;
};

struct SteeringPath {
    std::vector<SteeringStep> steps;
    /// Product of the branch probabilities along `steps`.
    double probability;
    StateVector final_state;
};

struct SteeringSearch {
    std::optional<SteeringPath> path;
    /// True when the depth limit stopped the search with states still unexplored.
    bool bound_reached = false;
    std::size_t states_explored = 0;
};

/// Breadth-first search over the outcome graph of the lab's operations.
///
/// Measurements are tried in declaration order, then unitaries, and outcomes
/// in declaration order. States are deduplicated on their phase-canonical
/// amplitudes rounded to a 1e-6 grid; within a layer the more probable route
/// to a state wins, and states reached in an earlier layer are not revisited.
/// Returns the most probable path among those of minimal depth that ends on
/// `to` (squared overlap > 1 - 1e-9) with probability >= min_prob; ties keep
/// the first found.
SteeringSearch find_steering_path(const Laboratory &lab,
                                  const StateVector &from,
                                  const StateVector &to,
                                  int max_depth = kDefaultMaxDepth,
                                  double min_prob = kDefaultMinProb);

/// Preconditions of nogo_verdict for the pair (L, D): the states are
/// orthogonal, some allowed measurement tells them apart, and D -> L is forbidden.
bool check_conditions(const Laboratory &lab, const StateVector &live, const StateVector &dead);

/// Exact probability that `protocol`, run from `from`, ends on `to`.
/// Throws DisallowedOperation if the protocol names an operation the lab lacks.
double total_reach_probability(const Laboratory &lab,
                               const StateVector &from,
                               const StateVector &to,
                               const ProtocolSpec &protocol);

struct NoGoVerdict {
    std::string operator_name;
    bool violated = false;
    std::optional<SteeringPath> witness;
    bool bound_reached = false;
};

/// Name under which nogo_verdict adjoins the candidate measurement.
inline constexpr std::string_view kCandidateMeasurementName = "P_S";
/// Outcome label of the candidate projector in the adjoined measurement.
inline constexpr std::string_view kCandidateOutcomeLabel = "S";

/// Adjoins {candidate, I - candidate} to the lab and searches for a route
/// from `dead` to `live`. A route means the candidate cannot exist in this lab.
/// Throws PreconditionFailed if check_conditions(lab, live, dead) fails or the
/// candidate is not a projector.
NoGoVerdict nogo_verdict(const Laboratory &lab,
                         const Operator &candidate,
                         const StateVector &live,
                         const StateVector &dead,
                         int max_depth = kDefaultMaxDepth,
                         std::string operator_name = "candidate");

}  // namespace catlab
