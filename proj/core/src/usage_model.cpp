#include "ucm/usage_model.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include "ucm/errors.hpp"

namespace ucm {

const char* to_string(StateKind kind) {
    switch (kind) {
        case StateKind::Start: return "start";
        case StateKind::End: return "end";
        case StateKind::Responsibility: return "responsibility";
        case StateKind::Stub: return "stub";
        case StateKind::Selection: return "selection";
        case StateKind::OrFork: return "or_fork";
        case StateKind::OrJoin: return "or_join";
        case StateKind::AndFork: return "and_fork";
        case StateKind::AndJoin: return "and_join";
    }
    return "?";
}

namespace {

StateKind state_kind_of(NodeKind kind) {
    switch (kind) {
        case NodeKind::Start: return StateKind::Start;
        case NodeKind::End: return StateKind::End;
        case NodeKind::Responsibility: return StateKind::Responsibility;
        case NodeKind::Stub: return StateKind::Stub;
        case NodeKind::OrFork: return StateKind::OrFork;
        case NodeKind::OrJoin: return StateKind::OrJoin;
        case NodeKind::AndFork: return StateKind::AndFork;
        case NodeKind::AndJoin: return StateKind::AndJoin;
    }
    return StateKind::Responsibility;
}

std::string qualify(const std::vector<std::string>& ctx, const std::string& id) {
    std::string out;
    for (const auto& part : ctx) {
        out += part;
        out += '/';
    }
    out += id;
    return out;
}

}  // namespace

std::optional<std::size_t> ChainGraph::state_index(const std::string& id) const {
    for (std::size_t i = 0; i < states.size(); ++i)
        if (states[i].id == id) return i;
    return std::nullopt;
}

const ChainGraph* UsageModel::chain_for(const std::string& map_name) const {
    if (top.name == map_name) return &top;
    for (const auto& sub : subs)
        if (sub.name == map_name) return &sub;
    return nullptr;
}

void FlatChain::finalize() {
    out.assign(states.size(), {});
    in_degree.assign(states.size(), 0);
    for (std::size_t i = 0; i < transitions.size(); ++i) {
        out[transitions[i].from].push_back(i);
        ++in_degree[transitions[i].to];
    }
    start_states.clear();
    for (std::size_t i = 0; i < states.size(); ++i)
        if (states[i].kind == StateKind::Start && in_degree[i] == 0) start_states.push_back(i);
}

std::optional<std::size_t> FlatChain::state_index(const std::string& id) const {
    for (std::size_t i = 0; i < states.size(); ++i)
        if (states[i].id == id) return i;
    return std::nullopt;
}

UsageModel convert(const UcmModel& model) {
    UsageModel um;

    auto build_chain = [&](const MapGraph& map) {
        ChainGraph chain;
        chain.name = map.name;
        for (const auto& n : map.nodes)
            chain.states.push_back({n.id, state_kind_of(n.kind), n.id, n.trigger});
        for (const auto& e : map.edges) {
            auto from = chain.state_index(e.from);
            auto to = chain.state_index(e.to);
            if (!from || !to) throw Error("convert: edge references unknown node in map '" + map.name + "'");
            chain.transitions.push_back({*from, *to, e.probability, e.condition});
        }
        return chain;
    };

    for (const auto& map : model.maps) {
        if (map.root) um.top = build_chain(map);
        else um.subs.push_back(build_chain(map));

        for (const auto& n : map.nodes) {
            if (!n.stub) continue;
            auto ports = stub_port_edges(map, n);
            if (!ports)
                throw Error("convert: stub '" + n.id + "' port count does not match its edges");
            StubWiring wiring;
            wiring.stub_id = n.id;
            wiring.map = map.name;
            wiring.dynamic = n.stub->dynamic;
            wiring.inputs = n.stub->inputs;
            wiring.outputs = n.stub->outputs;
            wiring.input_transitions = ports->input_edges;   // transition i mirrors edge i
            wiring.output_transitions = ports->output_edges;
            wiring.bindings = n.stub->bindings;
            um.stubs[n.id] = std::move(wiring);

            std::vector<StubSelection> selections;
            for (const auto& b : n.stub->bindings) selections.push_back({b.plugin, b.probability});
            um.stub_states[n.id] = std::move(selections);
        }
    }
    if (um.top.name.empty() && !model.maps.empty())
        throw Error("convert: model has no root map");
    return um;
}

namespace {

// One instantiation of a map: where its nodes landed in the flat chain.
struct Instance {
    std::map<std::string, std::size_t> state_of;  // non-stub node id -> flat state index
    std::map<std::string, std::vector<std::size_t>> selections;  // stub id -> per-input index
    std::map<std::string, std::vector<Instance>> subs;  // stub id -> instance per binding
};

class Flattener {
public:
    explicit Flattener(const UsageModel& um) : um_(um) {}

    FlatChain take() && { return std::move(flat_); }

    Instance instantiate(std::vector<std::string>& ctx, const ChainGraph& chain) {
        if (!active_.insert(chain.name).second) throw RecursivePlugin(chain.name);

        Instance inst;
        for (const auto& s : chain.states) {
            if (s.kind != StateKind::Stub) {
                inst.state_of[s.id] = add_state(
                    {qualify(ctx, s.id), s.kind, s.source, chain.name, s.trigger});
                continue;
            }
            const StubWiring& wiring = um_.stubs.at(s.id);
            for (const auto& port : wiring.inputs)
                inst.selections[s.id].push_back(add_state(
                    {qualify(ctx, s.id) + ":" + port, StateKind::Selection, s.id, chain.name, 1.0}));

            for (const auto& binding : wiring.bindings) {
                const ChainGraph* sub = um_.chain_for(binding.plugin);
                if (!sub) throw Error("flatten: unknown plug-in map '" + binding.plugin + "'");
                ctx.push_back(s.id);
                Instance sub_inst = instantiate(ctx, *sub);
                ctx.pop_back();
                for (std::size_t i = 0; i < wiring.inputs.size(); ++i) {
                    const std::string& entry_node = binding.in.at(wiring.inputs[i]);
                    add_transition(inst.selections[s.id][i], sub_inst.state_of.at(entry_node),
                                   binding.probability, std::nullopt);
                }
                inst.subs[s.id].push_back(std::move(sub_inst));
            }
        }

        for (std::size_t ti = 0; ti < chain.transitions.size(); ++ti) {
            const ChainTransition& t = chain.transitions[ti];
            const ChainState& from = chain.states[t.from];
            const ChainState& to = chain.states[t.to];
            std::size_t entry = entry_index(inst, to, ti);

            if (from.kind != StateKind::Stub) {
                add_transition(inst.state_of.at(from.id), entry, t.probability, t.condition);
                continue;
            }
            // Mass leaves a stub through the plug-in end points each binding
            // maps onto this output port.
            const StubWiring& wiring = um_.stubs.at(from.id);
            const std::string& port = wiring.outputs[port_index(wiring.output_transitions, ti)];
            for (std::size_t bi = 0; bi < wiring.bindings.size(); ++bi) {
                for (const auto& [end_point, out_port] : wiring.bindings[bi].out) {
                    if (out_port != port) continue;
                    add_transition(inst.subs.at(from.id)[bi].state_of.at(end_point), entry,
                                   t.probability, t.condition);
                }
            }
        }

        active_.erase(chain.name);
        return inst;
    }

private:
    std::size_t add_state(FlatState state) {
        flat_.states.push_back(std::move(state));
        return flat_.states.size() - 1;
    }

    void add_transition(std::size_t from, std::size_t to, double probability,
                        std::optional<EdgeCondition> condition) {
        flat_.transitions.push_back({from, to, probability, std::move(condition)});
    }

    static std::size_t port_index(const std::vector<std::size_t>& port_transitions,
                                  std::size_t ti) {
        for (std::size_t i = 0; i < port_transitions.size(); ++i)
            if (port_transitions[i] == ti) return i;
        throw Error("flatten: stub edge not matched to a port");
    }

    std::size_t entry_index(const Instance& inst, const ChainState& to, std::size_t ti) const {
        if (to.kind != StateKind::Stub) return inst.state_of.at(to.id);
        const StubWiring& wiring = um_.stubs.at(to.id);
        return inst.selections.at(to.id)[port_index(wiring.input_transitions, ti)];
    }

    const UsageModel& um_;
    FlatChain flat_;
    std::set<std::string> active_;
};

}  // namespace

FlatChain flatten(const UsageModel& um) {
    Flattener flattener(um);
    std::vector<std::string> ctx;
    flattener.instantiate(ctx, um.top);
    FlatChain flat = std::move(flattener).take();
    flat.finalize();
    return flat;
}

ValidationReport check_stochastic(const FlatChain& chain) {
    ValidationReport report;
    for (std::size_t i = 0; i < chain.states.size(); ++i) {
        if (i >= chain.out.size() || chain.out[i].empty()) continue;  // absorbing states exempt
        const FlatState& s = chain.states[i];
        if (s.kind == StateKind::OrFork || s.kind == StateKind::Selection) {
            double sum = 0.0;
            for (std::size_t ti : chain.out[i]) sum += chain.transitions[ti].probability;
            if (std::abs(sum - 1.0) > kProbabilityTolerance) {
                std::ostringstream msg;
                msg << "outgoing probability sum " << sum << " != 1";
                report.issues.push_back({s.id, msg.str()});
            }
        } else {
            for (std::size_t ti : chain.out[i]) {
                if (std::abs(chain.transitions[ti].probability - 1.0) > kProbabilityTolerance) {
                    std::ostringstream msg;
                    msg << "deterministic state carries probability "
                        << chain.transitions[ti].probability;
                    report.issues.push_back({s.id, msg.str()});
                    break;
                }
            }
        }
    }
    return report;
}

}  // namespace ucm
