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

#include "catlab/protocol.h"

#include <algorithm>
#include <map>
#include <thread>

#include "catlab/error.h"

namespace catlab {

ProtocolStep ProtocolStep::measure(std::string measurement) {
    return {Kind::Measure, std::move(measurement), 0, {}};
}

ProtocolStep ProtocolStep::unitary(std::string unitary) {
    return {Kind::Unitary, std::move(unitary), 0, {}};
}

ProtocolStep ProtocolStep::repeat(std::size_t count, std::vector<ProtocolStep> block) {
    return {Kind::Repeat, "", count, std::move(block)};
}

ProtocolStep ProtocolStep::stop_if(std::string label) {
    return {Kind::StopIf, std::move(label), 0, {}};
}

namespace {

void unroll_into(const std::vector<ProtocolStep> &steps, std::vector<ProtocolStep> &out, std::size_t &operations) {
    for (const auto &step : steps) {
        switch (step.kind) {
            case ProtocolStep::Kind::Repeat:
                for (std::size_t k = 0; k < step.count; k++) {
                    unroll_into(step.block, out, operations);
                }
                break;
            case ProtocolStep::Kind::Measure:
            case ProtocolStep::Kind::Unitary:
                if (++operations > kMaxProtocolSteps) {
                    throw CatlabError(ErrorCode::DepthCeiling, "protocol unrolls to more than " +
                                                                   std::to_string(kMaxProtocolSteps) + " operations");
                }
                out.push_back(step);
                break;
            case ProtocolStep::Kind::StopIf:
                out.push_back(step);
                break;
        }
    }
}

}  // namespace

std::vector<ProtocolStep> unroll(const ProtocolSpec &protocol) {
    std::vector<ProtocolStep> out;
    std::size_t operations = 0;
    unroll_into(protocol.steps, out, operations);
    return out;
}

void validate_protocol(const ProtocolSpec &protocol, const Laboratory &lab) {
    auto check = [&](auto &self, const std::vector<ProtocolStep> &steps) -> void {
        for (const auto &step : steps) {
            if (step.kind == ProtocolStep::Kind::Measure && !lab.find_measurement(step.name)) {
                throw CatlabError(ErrorCode::DisallowedOperation,
                                  "measurement '" + step.name + "' is not available in the laboratory");
            }
            if (step.kind == ProtocolStep::Kind::Unitary && !lab.find_unitary(step.name)) {
                throw CatlabError(ErrorCode::DisallowedOperation,
                                  "unitary '" + step.name + "' is not available in the laboratory");
            }
            if (step.kind == ProtocolStep::Kind::Repeat) {
                self(self, step.block);
            }
        }
    };
    check(check, protocol.steps);
}

OutcomeTree::OutcomeTree(QuantumState root) {
    nodes_.push_back(TreeNode{"", 1.0, 1.0, std::move(root), std::nullopt, {}, false});
}

std::size_t OutcomeTree::add_child(std::size_t parent, std::string label, double branch_probability,
                                   QuantumState state) {
    double cumulative = nodes_[parent].cumulative_probability * branch_probability;
    nodes_.push_back(TreeNode{std::move(label), branch_probability, cumulative, std::move(state), parent, {}, false});
    std::size_t index = nodes_.size() - 1;
    nodes_[parent].children.push_back(index);
    return index;
}

std::vector<std::size_t> OutcomeTree::leaves() const {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < nodes_.size(); k++) {
        if (nodes_[k].children.empty()) {
            out.push_back(k);
        }
    }
    return out;
}

std::vector<std::string> OutcomeTree::path_to(std::size_t node) const {
    std::vector<std::string> labels;
    while (nodes_[node].parent) {
        labels.push_back(nodes_[node].label);
        node = *nodes_[node].parent;
    }
    std::reverse(labels.begin(), labels.end());
    return labels;
}

namespace {

QuantumState canonical(QuantumState state) {
    if (auto *psi = std::get_if<StateVector>(&state)) {
        return canonicalize_phase(*psi);
    }
    return state;
}

}  // namespace

OutcomeTree enumerate(const ProtocolSpec &protocol, const Laboratory &lab, const QuantumState &initial) {
    if (!(space_of(initial) == lab.space())) {
        throw CatlabError(ErrorCode::DimensionMismatch, "initial state does not live in the laboratory's space");
    }
    validate_protocol(protocol, lab);
    auto steps = unroll(protocol);

    OutcomeTree tree(canonical(initial));
    struct Live {
        std::size_t node;
        std::string last_outcome;
    };
    std::vector<Live> live{{0, ""}};

    for (const auto &step : steps) {
        std::vector<Live> next;
        switch (step.kind) {
            case ProtocolStep::Kind::Measure: {
                const auto &m = *lab.find_measurement(step.name);
                for (const auto &item : live) {
                    QuantumState here = tree.nodes_[item.node].state;
                    double mass = tree.nodes_[item.node].cumulative_probability;
                    for (auto &rec : outcome_distribution(m, here)) {
                        if (!rec.post_state) {
                            tree.pruned_mass_ += mass * rec.probability;
                            continue;
                        }
                        auto child = tree.add_child(item.node, step.name + ":" + rec.label, rec.probability,
                                                    canonical(std::move(*rec.post_state)));
                        next.push_back({child, rec.label});
                    }
                }
                break;
            }
            case ProtocolStep::Kind::Unitary: {
                const auto &u = *lab.find_unitary(step.name);
                for (const auto &item : live) {
                    QuantumState moved = canonical(apply_unitary(u, tree.nodes_[item.node].state));
                    auto child = tree.add_child(item.node, step.name, 1.0, std::move(moved));
                    next.push_back({child, item.last_outcome});
                }
                break;
            }
            case ProtocolStep::Kind::StopIf:
                for (auto &item : live) {
                    if (item.last_outcome == step.name) {
                        tree.nodes_[item.node].halted = true;
                    } else {
                        next.push_back(std::move(item));
                    }
                }
                break;
            case ProtocolStep::Kind::Repeat:
                break;
        }
        live = std::move(next);
        if (tree.nodes_.size() > kMaxTreeNodes) {
            throw CatlabError(ErrorCode::DepthCeiling,
                              "outcome tree exceeds " + std::to_string(kMaxTreeNodes) + " nodes");
        }
    }
    return tree;
}

double leaf_mass(const OutcomeTree &tree, const StateVector &target) {
    double mass = 0;
    for (auto k : tree.leaves()) {
        const auto &node = tree.nodes()[k];
        if (fidelity(node.state, target) > kSameStateFidelity) {
            mass += node.cumulative_probability;
        }
    }
    return mass;
}

std::vector<StateBin> leaf_distribution(const OutcomeTree &tree) {
    std::map<StateKey, StateBin> bins;
    for (auto k : tree.leaves()) {
        const auto &node = tree.nodes()[k];
        auto key = state_key(node.state);
        auto it = bins.find(key);
        if (it == bins.end()) {
            it = bins.emplace(key, StateBin{key, node.state, 0.0, 0}).first;
        }
        it->second.probability += node.cumulative_probability;
    }
    std::vector<StateBin> out;
    for (auto &[key, bin] : bins) {
        out.push_back(std::move(bin));
    }
    return out;
}

const StateBin *Histogram::find(const StateKey &key) const {
    auto it = std::lower_bound(bins.begin(), bins.end(), key, [](const StateBin &b, const StateKey &k) {
        return b.key < k;
    });
    return it != bins.end() && it->key == key ? &*it : nullptr;
}

namespace {

QuantumState walk(const std::vector<ProtocolStep> &steps, const Laboratory &lab, const QuantumState &initial,
                  RandomStream &rng) {
    QuantumState state = initial;
    std::string last_outcome;
    for (const auto &step : steps) {
        if (step.kind == ProtocolStep::Kind::Measure) {
            auto drawn = sample_outcome(*lab.find_measurement(step.name), state, rng);
            last_outcome = std::move(drawn.label);
            state = std::move(drawn.post_state);
        } else if (step.kind == ProtocolStep::Kind::Unitary) {
            state = apply_unitary(*lab.find_unitary(step.name), state);
        } else if (step.kind == ProtocolStep::Kind::StopIf && last_outcome == step.name) {
            break;
        }
    }
    return canonical(std::move(state));
}

}  // namespace

Histogram run_monte_carlo(const ProtocolSpec &protocol,
                          const Laboratory &lab,
                          const QuantumState &initial,
                          std::uint64_t trials,
                          std::uint64_t seed,
                          unsigned workers) {
    if (trials < 1) {
        throw CatlabError(ErrorCode::PreconditionFailed, "Monte Carlo needs at least one trial");
    }
    if (!(space_of(initial) == lab.space())) {
        throw CatlabError(ErrorCode::DimensionMismatch, "initial state does not live in the laboratory's space");
    }
    validate_protocol(protocol, lab);
    auto steps = unroll(protocol);
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::min<std::uint64_t>(trials, 256))));

    using BinMap = std::map<StateKey, StateBin>;
    std::vector<BinMap> partial(workers);
    auto run_range = [&](unsigned w) {
        std::uint64_t begin = trials * w / workers;
        std::uint64_t end = trials * (w + 1) / workers;
        auto &bins = partial[w];
        for (std::uint64_t i = begin; i < end; i++) {
            RandomStream rng(seed, i);
            QuantumState final_state = walk(steps, lab, initial, rng);
            auto key = state_key(final_state);
            auto it = bins.find(key);
            if (it == bins.end()) {
                it = bins.emplace(key, StateBin{key, std::move(final_state), 0.0, 0}).first;
            }
            it->second.count++;
        }
    };
    if (workers == 1) {
        run_range(0);
    } else {
        std::vector<std::thread> threads;
        for (unsigned w = 0; w < workers; w++) {
            threads.emplace_back(run_range, w);
        }
        for (auto &t : threads) {
            t.join();
        }
    }

    BinMap merged;
    for (auto &bins : partial) {
        for (auto &[key, bin] : bins) {
            auto it = merged.find(key);
            if (it == merged.end()) {
                merged.emplace(key, std::move(bin));
            } else {
                it->second.count += bin.count;
            }
        }
    }
    Histogram hist{trials, seed, {}};
    for (auto &[key, bin] : merged) {
        bin.probability = static_cast<double>(bin.count) / static_cast<double>(trials);
        hist.bins.push_back(std::move(bin));
    }
    return hist;
}

}  // namespace catlab
