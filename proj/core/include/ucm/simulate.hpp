#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ucm/usage_model.hpp"

namespace ucm {

/// Identity of the pseudorandom scheme behind random_walk/estimate. Recorded
/// in outputs so estimates are reproducible per build.
std::string generator_identity();

struct WalkResult {
    std::vector<std::string> sequence;  // flat state ids in visit order
    std::map<std::string, int> visits;  // source object id -> count
    // Probabilistic choices taken, in traversal order: (choice state, successor).
    std::vector<std::pair<std::string, std::string>> signature;
};

/// One seeded random walk: probabilistic states sample an outgoing transition
/// with its stated probability, AND-forks traverse all branches. Identical
/// (chain, seed, loop_bound) give identical results.
WalkResult random_walk(const FlatChain& chain, std::uint64_t seed, int loop_bound = 1000);

/// Canonical one-line rendering of a choice signature, usable as a map key.
std::string signature_key(std::span<const std::pair<std::string, std::string>> choices);

struct Estimate {
    std::uint64_t seed = 0;
    int walks = 0;
    std::string generator;
    std::map<std::string, double> signature_frequency;  // signature_key -> frequency
    std::map<std::string, double> mean_visits;          // source object id -> mean count
};

/// Runs n independent walks with per-walk seeds derived deterministically
/// from (seed, walk index); returns empirical signature frequencies and mean
/// per-object visit counts.
Estimate estimate(const FlatChain& chain, int n, std::uint64_t seed, int loop_bound = 1000);

}  // namespace ucm
