#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ucm/model.hpp"

namespace ucm {

enum class StateKind {
    Start,
    End,
    Responsibility,
    Stub,       // chain graphs only; never survives flattening
    Selection,  // flat chains only: a stub input choosing among plug-ins
    OrFork,
    OrJoin,
    AndFork,
    AndJoin,
};

const char* to_string(StateKind kind);

struct ChainState {
    std::string id;      // node id (chains mirror one map, ids stay unqualified)
    StateKind kind = StateKind::Responsibility;
    std::string source;  // source object id; equals `id` for chain graphs
    double trigger = 1.0;
};

struct ChainTransition {
    std::size_t from = 0;
    std::size_t to = 0;
    double probability = 1.0;
    std::optional<EdgeCondition> condition;
};

/// Markov chain mirroring one map: one state per node, one transition per edge.
struct ChainGraph {
    std::string name;
    std::vector<ChainState> states;
    std::vector<ChainTransition> transitions;

    std::optional<std::size_t> state_index(const std::string& id) const;
};

struct StubSelection {
    std::string plugin;
    double probability = 1.0;
};

/// Everything needed to inline one stub: its ports, which transition of the
/// owning chain feeds/continues each port, and the plug-in bindings.
struct StubWiring {
    std::string stub_id;
    std::string map;  // owning map name
    bool dynamic = false;
    std::vector<std::string> inputs;
    std::vector<std::string> outputs;
    std::vector<std::size_t> input_transitions;   // per input port, transition index
    std::vector<std::size_t> output_transitions;  // per output port, transition index
    std::vector<PluginBinding> bindings;
};

/// Hierarchical usage model: the root map's chain plus one sub-chain per
/// plug-in map, with stub states carrying their selectable sub-chains.
struct UsageModel {
    ChainGraph top;
    std::vector<ChainGraph> subs;  // declaration order of the non-root maps
    std::map<std::string, std::vector<StubSelection>> stub_states;
    std::map<std::string, StubWiring> stubs;

    const ChainGraph* chain_for(const std::string& map_name) const;
};

struct FlatState {
    std::string id;      // qualified by the stub instantiation path, e.g. "SO/chk"
    StateKind kind = StateKind::Responsibility;
    std::string source;  // source object id (node id, or stub id for selections)
    std::string map;     // map the source belongs to
    double trigger = 1.0;
};

struct FlatTransition {
    std::size_t from = 0;
    std::size_t to = 0;
    double probability = 1.0;
    std::optional<EdgeCondition> condition;
};

/// Single walkable chain with every stub replaced by its inlined plug-ins.
struct FlatChain {
    std::vector<FlatState> states;
    std::vector<FlatTransition> transitions;
    std::vector<std::size_t> start_states;  // top-level start states

    // Derived; call finalize() after building a chain by hand.
    std::vector<std::vector<std::size_t>> out;  // per state, transition indices in order
    std::vector<std::size_t> in_degree;

    void finalize();
    std::optional<std::size_t> state_index(const std::string& id) const;
};

/// Converts a validated model into its hierarchical usage model. Pure
/// structural correspondence: states mirror nodes, transitions mirror edges,
/// probabilities are copied unchanged.
UsageModel convert(const UcmModel& model);

/// Inlines every stub state: one selection state per stub input, one fresh
/// copy of each bound plug-in's chain, ports wired per the bindings. Plug-in
/// end points left unmapped by a binding become absorbing states.
/// Throws RecursivePlugin if a plug-in transitively contains its own map.
FlatChain flatten(const UsageModel& um);

/// One issue per state whose outgoing probabilities are not a valid
/// distribution (choice states must sum to 1, deterministic states must carry
/// only probability-1 transitions). States without outgoing transitions are
/// exempt.
ValidationReport check_stochastic(const FlatChain& chain);

}  // namespace ucm
