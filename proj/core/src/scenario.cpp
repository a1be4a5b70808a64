#include "ucm/scenario.hpp"

#include <algorithm>
#include <optional>

#include "ucm/errors.hpp"
#include "walk_engine.hpp"

namespace ucm {

namespace {

std::size_t find_start(const FlatChain& chain, const std::string& start_point) {
    for (std::size_t idx : chain.start_states)
        if (chain.states[idx].source == start_point) return idx;
    throw UnknownReference(start_point, SourceLocation{"<scenario>", 1, 1});
}

// Decides a choice state from explicit bindings/condition values. Missing
// information is reported through `undecided` so callers can either fail
// (resolution) or branch (enumeration).
struct ChoiceNeed {
    enum Kind { None, Binding, Condition, Infeasible } kind = None;
    std::string key;                        // stub id or variable name
    std::vector<std::string> options;       // plug-in names for bindings
};

std::optional<std::size_t> decide(const FlatChain& chain, std::size_t state,
                                  std::span<const std::size_t> alternatives,
                                  const std::map<std::string, std::string>& bindings,
                                  const std::map<std::string, bool>& conditions,
                                  ChoiceNeed& need) {
    const FlatState& s = chain.states[state];
    if (s.kind == StateKind::Selection) {
        auto bound = bindings.find(s.source);
        if (bound == bindings.end()) {
            need.kind = ChoiceNeed::Binding;
            need.key = s.source;
            for (std::size_t ti : alternatives)
                need.options.push_back(chain.states[chain.transitions[ti].to].map);
            return std::nullopt;
        }
        for (std::size_t ti : alternatives)
            if (chain.states[chain.transitions[ti].to].map == bound->second) return ti;
        throw UnresolvedChoice(s.id);  // bound plug-in is not selectable at this stub
    }

    // OR-fork: the unique edge whose condition holds. Unconditioned edges make
    // the fork undecidable for a definition.
    for (std::size_t ti : alternatives)
        if (!chain.transitions[ti].condition) {
            need.kind = ChoiceNeed::Infeasible;
            return std::nullopt;
        }
    for (std::size_t ti : alternatives) {
        const auto& cond = *chain.transitions[ti].condition;
        if (!conditions.count(cond.var)) {
            need.kind = ChoiceNeed::Condition;
            need.key = cond.var;
            return std::nullopt;
        }
    }
    std::optional<std::size_t> chosen;
    for (std::size_t ti : alternatives) {
        const auto& cond = *chain.transitions[ti].condition;
        if (conditions.at(cond.var) == cond.value) {
            if (chosen) throw ConditionConflict(s.id, "more than one outgoing condition true");
            chosen = ti;
        }
    }
    if (!chosen) throw ConditionConflict(s.id, "no outgoing condition true");
    return chosen;
}

ScenarioPath to_path(const FlatChain& chain, std::size_t start, const detail::Traversal& walk,
                     const std::string& name) {
    ScenarioPath path;
    path.name = name;
    path.start = chain.states[start].id;
    path.trigger = chain.states[start].trigger;
    for (std::size_t ti : walk.transitions) {
        const FlatTransition& t = chain.transitions[ti];
        path.transitions.push_back(
            {chain.states[t.from].id, chain.states[t.to].id, t.probability});
    }
    path.visits = walk.visits;
    path.reached_ends = walk.reached_ends;
    path.choices = walk.choices;
    path.transition_indices = walk.transitions;
    return path;
}

}  // namespace

ScenarioPath resolve_scenario(const ScenarioDefinition& def, const FlatChain& chain,
                              int loop_bound) {
    std::size_t start = find_start(chain, def.start);

    auto choose = [&](std::size_t state, std::span<const std::size_t> alternatives) {
        ChoiceNeed need;
        auto picked = decide(chain, state, alternatives, def.bindings, def.conditions, need);
        if (!picked) throw UnresolvedChoice(chain.states[state].id);
        return *picked;
    };

    detail::Traversal walk = detail::traverse(chain, start, choose, loop_bound);
    ScenarioPath path = to_path(chain, start, walk, def.name);
    if (chain.start_states.size() > 1)
        path.choices.insert(path.choices.begin(), {"start", path.start});

    if (!def.post.empty()) {
        for (const auto& expected : def.post)
            if (!path.reached_ends.count(expected))
                throw PostConditionFailed(
                    def.post, {path.reached_ends.begin(), path.reached_ends.end()});
    }
    return path;
}

FlatChain scenario_chain(const ScenarioPath& path, const FlatChain& chain) {
    std::vector<std::size_t> indices = path.transition_indices;
    std::sort(indices.begin(), indices.end());
    indices.erase(std::unique(indices.begin(), indices.end()), indices.end());

    std::vector<bool> keep_state(chain.states.size(), false);
    if (auto start = chain.state_index(path.start)) keep_state[*start] = true;
    for (std::size_t ti : indices) {
        keep_state[chain.transitions[ti].from] = true;
        keep_state[chain.transitions[ti].to] = true;
    }

    FlatChain induced;
    std::vector<std::size_t> remap(chain.states.size(), 0);
    for (std::size_t i = 0; i < chain.states.size(); ++i) {
        if (!keep_state[i]) continue;
        remap[i] = induced.states.size();
        induced.states.push_back(chain.states[i]);
    }
    for (std::size_t ti : indices) {
        const FlatTransition& t = chain.transitions[ti];
        induced.transitions.push_back({remap[t.from], remap[t.to], t.probability, t.condition});
    }
    induced.finalize();
    return induced;
}

namespace {

struct Enumerator {
    const FlatChain& chain;
    int loop_bound;
    std::vector<ScenarioDefinition>& result;

    void explore(std::size_t start, const std::map<std::string, std::string>& bindings,
                 const std::map<std::string, bool>& conditions,
                 const std::vector<std::string>& name_parts) {
        ChoiceNeed need;
        auto choose = [&](std::size_t state, std::span<const std::size_t> alternatives) {
            ChoiceNeed local;
            auto picked = decide(chain, state, alternatives, bindings, conditions, local);
            if (!picked) {
                need = std::move(local);
                throw UnresolvedChoice(chain.states[state].id);
            }
            return *picked;
        };

        try {
            detail::traverse(chain, start, choose, loop_bound);
        } catch (const UnresolvedChoice&) {
            if (need.kind == ChoiceNeed::Binding) {
                for (const auto& plugin : need.options) {
                    auto next = bindings;
                    next[need.key] = plugin;
                    auto parts = name_parts;
                    parts.push_back(need.key + "=" + plugin);
                    explore(start, next, conditions, parts);
                }
            } else if (need.kind == ChoiceNeed::Condition) {
                for (bool value : {true, false}) {
                    auto next = conditions;
                    next[need.key] = value;
                    auto parts = name_parts;
                    parts.push_back(need.key + "=" + (value ? "true" : "false"));
                    explore(start, bindings, next, parts);
                }
            }
            return;  // Infeasible (or a plug-in mismatch): drop silently
        } catch (const ConditionConflict&) {
            return;
        } catch (const LoopBoundExceeded&) {
            return;
        }

        ScenarioDefinition def;
        def.start = chain.states[start].source;
        def.bindings = bindings;
        def.conditions = conditions;
        std::string name = def.start;
        for (const auto& part : name_parts) name += "__" + part;
        def.name = name;
        result.push_back(std::move(def));
    }
};

}  // namespace

std::vector<ScenarioDefinition> enumerate_scenarios(const UcmModel&, const FlatChain& chain,
                                                    int loop_bound) {
    std::vector<ScenarioDefinition> result;
    Enumerator enumerator{chain, loop_bound, result};
    for (std::size_t start : chain.start_states) enumerator.explore(start, {}, {}, {});
    return result;
}

}  // namespace ucm
