#pragma once

#include <functional>
#include <map>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ucm/usage_model.hpp"

namespace ucm::detail {

struct Traversal {
    std::vector<std::size_t> transitions;  // indices into chain.transitions, serialized order
    std::vector<std::string> sequence;     // flat state ids in visit order
    std::map<std::string, int> visits;     // source object id -> count
    std::set<std::string> reached_ends;    // source ids of end points reached
    std::vector<std::pair<std::string, std::string>> choices;  // (choice state, successor)
};

/// Picks one of a choice state's outgoing transitions; `alternatives` holds
/// transition indices in declaration order.
using ChoiceFn =
    std::function<std::size_t(std::size_t state, std::span<const std::size_t> alternatives)>;

/// Token walk from `start`: deterministic states follow their single
/// transition, OR-forks and selections ask `choose`, AND-forks take every
/// branch (serialized in declaration order, each branch fully traversed
/// before the next), AND-joins fire once all incoming branches arrived.
/// Throws LoopBoundExceeded when any state is entered more than `loop_bound`
/// times.
Traversal traverse(const FlatChain& chain, std::size_t start, const ChoiceFn& choose,
                   int loop_bound);

}  // namespace ucm::detail
