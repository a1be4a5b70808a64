#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ucm/usage_model.hpp"

namespace ucm {

struct ScenarioDefinition {
    std::string name;
    std::string start;                           // start point of the root map
    std::map<std::string, std::string> bindings;  // stub id -> plug-in map name
    std::map<std::string, bool> conditions;       // variable -> value
    std::vector<std::string> post;                // end points that must be reached

    bool operator==(const ScenarioDefinition&) const = default;
};

struct PathTransition {
    std::string from;
    std::string to;
    double probability = 1.0;

    bool operator==(const PathTransition&) const = default;
};

/// One resolved scenario: the transition sequence (AND-fork branches
/// serialized in declaration order), per-object visit counts, and the end
/// points reached.
struct ScenarioPath {
    std::string name;
    std::string start;     // flat id of the start state
    double trigger = 1.0;  // trigger probability of the start point
    std::vector<PathTransition> transitions;
    std::map<std::string, int> visits;  // source object id -> times traversed
    std::set<std::string> reached_ends;
    // Probabilistic choices taken, in traversal order: (choice state, successor).
    std::vector<std::pair<std::string, std::string>> choices;
    // Indices into the transitions of the chain this path was resolved on.
    std::vector<std::size_t> transition_indices;

    bool operator==(const ScenarioPath&) const = default;
};

/// Walks the flat chain under the definition's bindings and condition values.
/// Throws UnresolvedChoice, ConditionConflict, LoopBoundExceeded, or
/// PostConditionFailed.
ScenarioPath resolve_scenario(const ScenarioDefinition& def, const FlatChain& chain,
                              int loop_bound = 1000);

/// The sub-chain induced by exactly the states and transitions of `path`.
FlatChain scenario_chain(const ScenarioPath& path, const FlatChain& chain);

/// All distinct (start point x stub bindings x condition assignments) that
/// resolve without error, with deterministically generated names. Definitions
/// contain only the choices their path actually exercises.
std::vector<ScenarioDefinition> enumerate_scenarios(const UcmModel& model, const FlatChain& chain,
                                                    int loop_bound = 1000);

}  // namespace ucm
