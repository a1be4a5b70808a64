#include "ucm/simulate.hpp"

#include <random>

#include "ucm/errors.hpp"
#include "walk_engine.hpp"

namespace ucm {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// 53-bit uniform in [0, 1); bit-stable across platforms, unlike the standard
// library's distributions.
double uniform53(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

std::string generator_identity() { return "mt19937_64/u53"; }

WalkResult random_walk(const FlatChain& chain, std::uint64_t seed, int loop_bound) {
    if (chain.start_states.empty()) throw Error("random_walk: chain has no start state");
    std::mt19937_64 rng(splitmix64(seed));

    std::size_t start = chain.start_states[0];
    bool sampled_start = chain.start_states.size() > 1;
    if (sampled_start) {
        double total = 0.0;
        for (std::size_t idx : chain.start_states) total += chain.states[idx].trigger;
        double u = uniform53(rng) * total;
        double cumulative = 0.0;
        for (std::size_t idx : chain.start_states) {
            cumulative += chain.states[idx].trigger;
            start = idx;
            if (u < cumulative) break;
        }
    }

    auto choose = [&](std::size_t, std::span<const std::size_t> alternatives) {
        double u = uniform53(rng);
        double cumulative = 0.0;
        std::size_t picked = alternatives.back();
        for (std::size_t ti : alternatives) {
            cumulative += chain.transitions[ti].probability;
            if (u < cumulative) {
                picked = ti;
                break;
            }
        }
        return picked;
    };

    detail::Traversal walk = detail::traverse(chain, start, choose, loop_bound);
    WalkResult result;
    result.sequence = std::move(walk.sequence);
    result.visits = std::move(walk.visits);
    result.signature = std::move(walk.choices);
    if (sampled_start)
        result.signature.insert(result.signature.begin(), {"start", chain.states[start].id});
    return result;
}

std::string signature_key(std::span<const std::pair<std::string, std::string>> choices) {
    std::string key;
    for (const auto& [state, successor] : choices) {
        if (!key.empty()) key += "; ";
        key += state + " -> " + successor;
    }
    return key.empty() ? "(deterministic)" : key;
}

Estimate estimate(const FlatChain& chain, int n, std::uint64_t seed, int loop_bound) {
    if (n < 1) throw Error("estimate: walk count must be >= 1");

    std::map<std::string, long> counts;
    std::map<std::string, long> visit_totals;
    for (int i = 0; i < n; ++i) {
        std::uint64_t walk_seed = seed ^ splitmix64(static_cast<std::uint64_t>(i) + 1);
        WalkResult walk = random_walk(chain, walk_seed, loop_bound);
        ++counts[signature_key(walk.signature)];
        for (const auto& [object, count] : walk.visits) visit_totals[object] += count;
    }

    Estimate est;
    est.seed = seed;
    est.walks = n;
    est.generator = generator_identity();
    for (const auto& [signature, count] : counts)
        est.signature_frequency[signature] = static_cast<double>(count) / n;
    for (const auto& [object, total] : visit_totals)
        est.mean_visits[object] = static_cast<double>(total) / n;
    return est;
}

}  // namespace ucm
