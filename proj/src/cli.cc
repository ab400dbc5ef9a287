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

#include "catlab/cli.h"

#include <chrono>
#include <cstdlib>
#include <ostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"

#include "catlab/complex_text.h"
#include "catlab/error.h"
#include "catlab/scenario.h"
#include "catlab/serialize.h"

namespace catlab {

namespace {

struct Options {
    std::string scenario_path;
    std::optional<std::uint64_t> seed;
    std::string format = "json";
    // check
    std::string candidate;
    std::optional<std::string> outcome;
    std::optional<std::string> from;
    std::optional<std::string> to;
    int depth = kDefaultMaxDepth;
    // run / enumerate
    std::string protocol;
    std::optional<std::string> initial;
    std::vector<std::string> assume;
    std::uint64_t trials = 10000;
    bool exact = false;
    unsigned workers = 0;
    // discriminate
    std::string source_a;
    std::string source_b;
    std::string measurement;
};

std::string csv_field(const std::string &text) {
    if (text.find_first_of(",\"\n") == std::string::npos) {
        return text;
    }
    std::string quoted = "\"";
    for (char c : text) {
        if (c == '"') {
            quoted += '"';
        }
        quoted += c;
    }
    return quoted + "\"";
}

void csv_row(std::ostream &out, const std::vector<std::string> &fields) {
    for (std::size_t k = 0; k < fields.size(); k++) {
        out << (k ? "," : "") << csv_field(fields[k]);
    }
    out << "\n";
}

std::uint64_t resolve_seed(const Options &opt, const EnvLookup &env) {
    if (opt.seed) {
        return *opt.seed;
    }
    auto text = env("CATLAB_SEED");
    if (!text) {
        return 0;
    }
    try {
        std::size_t used = 0;
        auto value = std::stoull(*text, &used, 10);
        if (used == text->size() && (*text)[0] != '-') {
            return value;
        }
    } catch (const std::exception &) {
    }
    throw CatlabError(ErrorCode::ParseError, "CATLAB_SEED must be an unsigned 64-bit integer, got '" + *text + "'");
}

/// Name of the first declared state equal to `x` (up to phase for pure states).
std::optional<std::string> state_name(const Scenario &scenario, const QuantumState &x) {
    for (const auto &s : scenario.states) {
        if (s.state.index() != x.index()) {
            continue;
        }
        if (const auto *psi = std::get_if<StateVector>(&x)) {
            if (fidelity(std::get<StateVector>(s.state), *psi) > kSameStateFidelity) {
                return s.name;
            }
        } else if (std::get<DensityMatrix>(s.state).matrix().max_abs_diff(std::get<DensityMatrix>(x).matrix()) < 1e-9) {
            return s.name;
        }
    }
    return std::nullopt;
}

std::string state_text(const Scenario &scenario, const QuantumState &x) {
    if (auto name = state_name(scenario, x)) {
        return *name;
    }
    if (const auto *psi = std::get_if<StateVector>(&x)) {
        return format_state(*psi);
    }
    return "mixed";
}

Json name_or_null(const std::optional<std::string> &name) {
    return name ? Json(*name) : Json(nullptr);
}

class Session {
   public:
    Session(const std::string &command, const std::vector<std::string> &args, const Options &opt, std::uint64_t seed)
        : opt_(opt), seed_(seed), file_(parse_scenario(opt.scenario_path)) {
        report_["format_version"] = kReportFormatVersion;
        report_["command"] = command;
        report_["arguments"] = args;
        report_["seed"] = seed;
        report_["scenario"] = Json{{"name", file_.scenario.name}, {"sha256", file_.sha256}};
    }

    const Scenario &scenario() const {
        return file_.scenario;
    }

    void emit_json(std::ostream &out, Json result) {
        report_["result"] = std::move(result);
        out << report_.dump(2) << "\n";
    }

    bool csv() const {
        return opt_.format == "csv";
    }

    std::uint64_t seed() const {
        return seed_;
    }

   private:
    const Options &opt_;
    std::uint64_t seed_;
    ScenarioFile file_;
    Json report_;
};

int cmd_check(Session &session, const Options &opt, std::ostream &out) {
    const auto &scenario = session.scenario();
    const auto *m = scenario.find_measurement(opt.candidate);
    if (!m) {
        throw CatlabError(ErrorCode::UnknownName, "no measurement named '" + opt.candidate + "'");
    }
    const Outcome *outcome = &m->outcomes().front();
    if (opt.outcome) {
        outcome = m->find(*opt.outcome);
        if (!outcome) {
            throw CatlabError(ErrorCode::UnknownName,
                              "measurement '" + opt.candidate + "' has no outcome '" + *opt.outcome + "'");
        }
    }

    std::string from_name;
    std::string to_name;
    if (opt.from && opt.to) {
        from_name = *opt.from;
        to_name = *opt.to;
    } else if (!opt.from && !opt.to && scenario.lab.forbidden().size() == 1) {
        const auto &f = scenario.lab.forbidden().front();
        from_name = state_text(scenario, f.from);
        to_name = state_text(scenario, f.to);
    } else {
        throw CatlabError(ErrorCode::PreconditionFailed,
                          "give both --from and --to unless the scenario declares exactly one forbidden transition");
    }
    const auto &dead = scenario.pure_state(from_name);
    const auto &live = scenario.pure_state(to_name);

    auto verdict = nogo_verdict(scenario.lab, outcome->projector, live, dead, opt.depth, opt.candidate);
    int code = verdict.violated ? kExitViolation : kExitOk;

    if (session.csv()) {
        csv_row(out, {"candidate", "outcome", "from", "to", "violated", "bound_reached", "probability", "witness"});
        std::string steps;
        if (verdict.witness) {
            for (const auto &s : verdict.witness->steps) {
                steps += (steps.empty() ? "" : " ") + s.operation + ":" + s.outcome;
            }
        }
        csv_row(out, {opt.candidate, outcome->label, from_name, to_name, verdict.violated ? "true" : "false",
                      verdict.bound_reached ? "true" : "false",
                      verdict.witness ? format_double(verdict.witness->probability) : "", steps});
        return code;
    }
    Json result;
    result["candidate"] = opt.candidate;
    result["outcome"] = outcome->label;
    result["from"] = from_name;
    result["to"] = to_name;
    result["max_depth"] = opt.depth;
    result["verdict"] = to_json(verdict);
    session.emit_json(out, std::move(result));
    return code;
}

struct ProtocolContext {
    const ProtocolSpec *protocol;
    Laboratory lab;
    std::string initial_name;
    const QuantumState *initial;
};

ProtocolContext protocol_context(const Scenario &scenario, const Options &opt) {
    const auto *protocol = scenario.find_protocol(opt.protocol);
    if (!protocol) {
        throw CatlabError(ErrorCode::UnknownName, "no protocol named '" + opt.protocol + "'");
    }
    std::string initial_name;
    if (opt.initial) {
        initial_name = *opt.initial;
    } else if (!scenario.lab.forbidden().empty()) {
        initial_name = state_text(scenario, scenario.lab.forbidden().front().from);
    } else if (!scenario.states.empty()) {
        initial_name = scenario.states.front().name;
    } else {
        throw CatlabError(ErrorCode::PreconditionFailed, "the scenario declares no states; pass --initial");
    }
    const auto *initial = scenario.find_state(initial_name);
    if (!initial) {
        throw CatlabError(ErrorCode::UnknownName, "no state named '" + initial_name + "'");
    }
    return {protocol, scenario.lab_assuming(opt.assume), initial_name, initial};
}

Json leaf_mass_table(const Scenario &scenario, const OutcomeTree &tree) {
    Json table = Json::array();
    for (const auto &s : scenario.states) {
        if (const auto *psi = std::get_if<StateVector>(&s.state)) {
            table.push_back(Json{{"state", s.name}, {"mass", leaf_mass(tree, *psi)}});
        }
    }
    return table;
}

Json context_json(const ProtocolContext &ctx, const Options &opt) {
    Json j;
    j["protocol"] = opt.protocol;
    j["initial"] = ctx.initial_name;
    j["assumed"] = opt.assume;
    return j;
}

int cmd_run(Session &session, const Options &opt, std::ostream &out) {
    const auto &scenario = session.scenario();
    auto ctx = protocol_context(scenario, opt);
    auto tree = enumerate(*ctx.protocol, ctx.lab, *ctx.initial);
    auto exact = leaf_distribution(tree);

    if (opt.exact) {
        if (session.csv()) {
            csv_row(out, {"label", "exact_p", "empirical_freq", "n"});
            for (const auto &bin : exact) {
                csv_row(out, {state_text(scenario, bin.state), format_double(bin.probability), "", "0"});
            }
            return kExitOk;
        }
        Json result = context_json(ctx, opt);
        result["mode"] = "exact";
        result["node_count"] = tree.nodes().size();
        Json leaves = Json::array();
        for (auto k : tree.leaves()) {
            const auto &node = tree.nodes()[k];
            Json leaf;
            leaf["path"] = tree.path_to(k);
            leaf["probability"] = node.cumulative_probability;
            leaf["state_name"] = name_or_null(state_name(scenario, node.state));
            leaf["state"] = to_json(node.state);
            leaf["halted"] = node.halted;
            leaves.push_back(std::move(leaf));
        }
        result["leaves"] = std::move(leaves);
        result["pruned_mass"] = tree.pruned_mass();
        result["leaf_mass"] = leaf_mass_table(scenario, tree);
        session.emit_json(out, std::move(result));
        return kExitOk;
    }

    if (opt.trials < 1) {
        throw CatlabError(ErrorCode::PreconditionFailed, "--trials must be at least 1 without --exact");
    }
    unsigned workers = opt.workers ? opt.workers : std::max(1u, std::thread::hardware_concurrency());
    auto hist = run_monte_carlo(*ctx.protocol, ctx.lab, *ctx.initial, opt.trials, session.seed(), workers);

    // Union of exactly reachable states and sampled states, in key order.
    std::map<StateKey, std::pair<const StateBin *, const StateBin *>> rows;
    for (const auto &bin : exact) {
        rows[bin.key].first = &bin;
    }
    for (const auto &bin : hist.bins) {
        rows[bin.key].second = &bin;
    }

    if (session.csv()) {
        csv_row(out, {"label", "exact_p", "empirical_freq", "n"});
        for (const auto &[key, row] : rows) {
            const auto &state = row.first ? row.first->state : row.second->state;
            csv_row(out, {state_text(scenario, state), format_double(row.first ? row.first->probability : 0.0),
                          format_double(row.second ? row.second->probability : 0.0), std::to_string(hist.trials)});
        }
        return kExitOk;
    }
    Json result = context_json(ctx, opt);
    result["mode"] = "monte_carlo";
    result["trials"] = hist.trials;
    Json bins = Json::array();
    for (const auto &[key, row] : rows) {
        const auto &state = row.first ? row.first->state : row.second->state;
        Json bin;
        bin["state_name"] = name_or_null(state_name(scenario, state));
        bin["state"] = to_json(state);
        bin["exact_probability"] = row.first ? row.first->probability : 0.0;
        bin["count"] = row.second ? row.second->count : 0;
        bin["frequency"] = row.second ? row.second->probability : 0.0;
        bins.push_back(std::move(bin));
    }
    result["bins"] = std::move(bins);
    result["leaf_mass"] = leaf_mass_table(scenario, tree);
    session.emit_json(out, std::move(result));
    return kExitOk;
}

int cmd_enumerate(Session &session, const Options &opt, std::ostream &out) {
    const auto &scenario = session.scenario();
    auto ctx = protocol_context(scenario, opt);
    auto tree = enumerate(*ctx.protocol, ctx.lab, *ctx.initial);
    if (session.csv()) {
        csv_row(out, {"node", "parent", "label", "branch_p", "cumulative_p", "state", "halted"});
        for (std::size_t k = 0; k < tree.nodes().size(); k++) {
            const auto &n = tree.nodes()[k];
            csv_row(out, {std::to_string(k), n.parent ? std::to_string(*n.parent) : "", n.label,
                          format_double(n.branch_probability), format_double(n.cumulative_probability),
                          state_text(scenario, n.state), n.halted ? "true" : "false"});
        }
        return kExitOk;
    }
    Json result = context_json(ctx, opt);
    result["tree"] = to_json(tree);
    result["leaf_mass"] = leaf_mass_table(scenario, tree);
    session.emit_json(out, std::move(result));
    return kExitOk;
}

int cmd_discriminate(Session &session, const Options &opt, std::ostream &out) {
    const auto &scenario = session.scenario();
    auto lookup = [&](const std::string &name) -> const QuantumState & {
        const auto *x = scenario.find_state(name);
        if (!x) {
            throw CatlabError(ErrorCode::UnknownName, "no state named '" + name + "'");
        }
        return *x;
    };
    const auto *m = scenario.find_measurement(opt.measurement);
    if (!m) {
        throw CatlabError(ErrorCode::UnknownName, "no measurement named '" + opt.measurement + "'");
    }
    auto report =
        discriminate(lookup(opt.source_a), lookup(opt.source_b), *m, opt.trials, session.seed(), opt.measurement);

    if (session.csv()) {
        csv_row(out, {"source", "label", "exact_p", "empirical_freq", "n"});
        double n = static_cast<double>(report.trials);
        for (int side = 0; side < 2; side++) {
            const auto &dist = side ? report.dist_b : report.dist_a;
            const auto &counts = side ? report.counts_b : report.counts_a;
            for (std::size_t k = 0; k < dist.size(); k++) {
                csv_row(out, {side ? opt.source_b : opt.source_a, dist[k].label, format_double(dist[k].probability),
                              format_double(static_cast<double>(counts[k]) / n), std::to_string(report.trials)});
            }
        }
        return kExitOk;
    }
    Json result;
    result["a"] = opt.source_a;
    result["b"] = opt.source_b;
    result["report"] = to_json(report);
    session.emit_json(out, std::move(result));
    return kExitOk;
}

void add_common(CLI::App *cmd, Options &opt) {
    cmd->add_option("--scenario", opt.scenario_path, "Scenario file")->required();
    cmd->add_option("--seed", opt.seed, "Random seed (default: $CATLAB_SEED, else 0)");
    cmd->add_option("--format", opt.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
}

}  // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err, EnvLookup env) {
    if (!env) {
        env = [](const std::string &name) -> std::optional<std::string> {
            const char *value = std::getenv(name.c_str());
            return value ? std::optional<std::string>(value) : std::nullopt;
        };
    }
    auto start = std::chrono::steady_clock::now();

    Options opt;
    CLI::App app{"Measurement laboratory simulator", "catlab"};
    app.require_subcommand(1);

    auto *check = app.add_subcommand("check", "Search for a witness that a candidate measurement breaks the lab");
    add_common(check, opt);
    check->add_option("--candidate", opt.candidate, "Declared measurement put on trial")->required();
    check->add_option("--outcome", opt.outcome, "Outcome of the candidate to use (default: its first)");
    check->add_option("--from", opt.from, "Start state D of the forbidden transition");
    check->add_option("--to", opt.to, "Target state L of the forbidden transition");
    check->add_option("--depth", opt.depth, "Maximum witness length")->check(CLI::Range(1, 64));

    auto *run = app.add_subcommand("run", "Run a protocol by sampling or exact enumeration");
    auto *enumerate_cmd = app.add_subcommand("enumerate", "Print the full outcome tree of a protocol");
    for (auto *cmd : {run, enumerate_cmd}) {
        add_common(cmd, opt);
        cmd->add_option("--protocol", opt.protocol, "Protocol name")->required();
        cmd->add_option("--initial", opt.initial,
                        "Initial state (default: start of the first forbidden transition, else the first state)");
        cmd->add_option("--assume", opt.assume, "Candidate measurement to make available (repeatable)");
    }
    run->add_option("--trials", opt.trials, "Monte Carlo trials");
    run->add_flag("--exact", opt.exact, "Enumerate instead of sampling");
    run->add_option("--workers", opt.workers, "Sampling threads (default: hardware concurrency)");

    auto *disc = app.add_subcommand("discriminate", "Compare two sources under one measurement");
    add_common(disc, opt);
    disc->add_option("--a", opt.source_a, "Source A")->required();
    disc->add_option("--b", opt.source_b, "Source B")->required();
    disc->add_option("--measurement", opt.measurement, "Measurement name")->required();
    disc->add_option("--trials", opt.trials, "Samples per source");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        err << "catlab: " << e.what() << "\n";
        return kExitInputError;
    }

    int code = kExitInputError;
    try {
        auto *cmd = app.get_subcommands().front();
        Session session(cmd->get_name(), args, opt, resolve_seed(opt, env));
        if (cmd == check) {
            code = cmd_check(session, opt, out);
        } else if (cmd == run) {
            code = cmd_run(session, opt, out);
        } else if (cmd == enumerate_cmd) {
            code = cmd_enumerate(session, opt, out);
        } else {
            code = cmd_discriminate(session, opt, out);
        }
    } catch (const CatlabError &e) {
        err << "catlab: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception &e) {
        err << "catlab: internal error: " << e.what() << "\n";
        return kExitInputError;
    }
    auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    err << "wall time: " << format_double(elapsed) << " ms\n";
    return code;
}

}  // namespace catlab
