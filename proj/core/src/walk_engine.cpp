#include "walk_engine.hpp"

#include "ucm/errors.hpp"

namespace ucm::detail {

Traversal traverse(const FlatChain& chain, std::size_t start, const ChoiceFn& choose,
                   int loop_bound) {
    Traversal result;
    std::vector<int> entries(chain.states.size(), 0);
    std::vector<int> arrivals(chain.states.size(), 0);
    std::vector<std::size_t> pending;  // transitions to take; LIFO serializes AND branches

    auto enter = [&](std::size_t state) {
        const FlatState& s = chain.states[state];
        if (++entries[state] > loop_bound) throw LoopBoundExceeded(s.id);
        result.sequence.push_back(s.id);
        switch (s.kind) {
            case StateKind::Start:
            case StateKind::Responsibility:
                ++result.visits[s.source];
                break;
            case StateKind::End:
                ++result.visits[s.source];
                result.reached_ends.insert(s.source);
                break;
            default:
                break;
        }
        if (s.kind == StateKind::AndJoin && chain.in_degree[state] > 1 &&
            ++arrivals[state] % static_cast<int>(chain.in_degree[state]) != 0)
            return;  // wait for the sibling branches

        const auto& outs = chain.out[state];
        if (outs.empty()) return;  // absorbed
        if (outs.size() == 1) {
            pending.push_back(outs[0]);
            return;
        }
        if (s.kind == StateKind::AndFork) {
            for (auto it = outs.rbegin(); it != outs.rend(); ++it) pending.push_back(*it);
            return;
        }
        if (s.kind == StateKind::OrFork || s.kind == StateKind::Selection) {
            std::size_t ti = choose(state, outs);
            result.choices.emplace_back(s.id, chain.states[chain.transitions[ti].to].id);
            pending.push_back(ti);
            return;
        }
        throw UnresolvedChoice(s.id);  // deterministic state with several continuations
    };

    enter(start);
    while (!pending.empty()) {
        std::size_t ti = pending.back();
        pending.pop_back();
        result.transitions.push_back(ti);
        enter(chain.transitions[ti].to);
    }
    return result;
}

}  // namespace ucm::detail
