#pragma once

#include <string>

#include "ucm/usage_model.hpp"

namespace ucm {

/// Graphviz digraph for one chain. Nodes appear in declaration order; labels
/// are source object ids; probability-1 transition labels are omitted.
std::string to_dot(const ChainGraph& chain);

/// One digraph per chain: top first, then each sub-chain.
std::string to_dot(const UsageModel& um);

std::string to_dot(const FlatChain& chain, const std::string& name = "flat");

}  // namespace ucm
