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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "catlab/lab.h"
#include "catlab/measure.h"
#include "catlab/state.h"

namespace catlab {

/// Largest number of measurement/unitary steps a protocol may unroll to.
inline constexpr std::size_t kMaxProtocolSteps = 64;
/// Largest outcome tree enumerate() will build.
inline constexpr std::size_t kMaxTreeNodes = std::size_t{1} << 21;

struct ProtocolStep {
    enum class Kind { Measure, Unitary, Repeat, StopIf };

    Kind kind;
    /// Measurement or unitary name, or the outcome label for StopIf.
    std::string name;
    std::size_t count = 0;
    std::vector<ProtocolStep> block;

    static ProtocolStep measure(std::string measurement);
    static ProtocolStep unitary(std::string unitary);
    static ProtocolStep repeat(std::size_t count, std::vector<ProtocolStep> block);
    /// Halts a branch whose most recent measurement outcome is `label`.
    static ProtocolStep stop_if(std::string label);

    bool operator==(const ProtocolStep &) const = default;
};

struct ProtocolSpec {
    std::vector<ProtocolStep> steps;

    bool operator==(const ProtocolSpec &) const = default;
};

/// Repeat blocks expanded; throws DepthCeiling past kMaxProtocolSteps operations.
std::vector<ProtocolStep> unroll(const ProtocolSpec &protocol);

/// Throws DisallowedOperation for names the lab does not declare.
void validate_protocol(const ProtocolSpec &protocol, const Laboratory &lab);

struct TreeNode {
    /// "measurement:outcome" or the unitary's name; empty for the root.
    std::string label;
    double branch_probability = 1.0;
    double cumulative_probability = 1.0;
    QuantumState state;
    std::optional<std::size_t> parent;
    std::vector<std::size_t> children;
    /// Stopped by a stop-if step.
    bool halted = false;
};

/// Exact branching record of a protocol run.
class OutcomeTree {
   public:
    explicit OutcomeTree(QuantumState root);

    const std::vector<TreeNode> &nodes() const {
        return nodes_;
    }
    const TreeNode &root() const {
        return nodes_.front();
    }
    std::vector<std::size_t> leaves() const;
    /// Probability mass dropped with branches below kNegligible.
    double pruned_mass() const {
        return pruned_mass_;
    }
    /// Root-to-node labels.
    std::vector<std::string> path_to(std::size_t node) const;

   private:
    friend OutcomeTree enumerate(const ProtocolSpec &, const Laboratory &, const QuantumState &);

    std::size_t add_child(std::size_t parent, std::string label, double branch_probability, QuantumState state);

    std::vector<TreeNode> nodes_;
    double pruned_mass_ = 0;
};

/// Exact outcome tree. Outcomes below kNegligible are dropped into pruned_mass().
/// Leaf states are phase-canonical. Throws DisallowedOperation, or DepthCeiling
/// when the protocol or the tree exceeds its ceiling.
OutcomeTree enumerate(const ProtocolSpec &protocol, const Laboratory &lab, const QuantumState &initial);

/// Total leaf probability on states matching `target` (squared overlap > 1 - 1e-9).
double leaf_mass(const OutcomeTree &tree, const StateVector &target);

struct StateBin {
    StateKey key;
    QuantumState state;
    double probability = 0;
    std::uint64_t count = 0;
};

/// Leaves grouped by state key, ordered by key.
std::vector<StateBin> leaf_distribution(const OutcomeTree &tree);

struct Histogram {
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    /// Ordered by key; `probability` holds the empirical frequency.
    std::vector<StateBin> bins;

    const StateBin *find(const StateKey &key) const;
};

/// `trials` independent walks; walk i draws from RandomStream(seed, i), so the
/// histogram does not depend on `workers`.
Histogram run_monte_carlo(const ProtocolSpec &protocol,
                          const Laboratory &lab,
                          const QuantumState &initial,
                          std::uint64_t trials,
                          std::uint64_t seed,
                          unsigned workers = 1);

}  // namespace catlab
