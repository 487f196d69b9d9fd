#ifndef HYPERINF_GENERATORS_HPP
#define HYPERINF_GENERATORS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <unordered_set>
#include <vector>

#include "hyperinf/hypergraph.hpp"

namespace hyperinf {

enum class GeneratorKind { erdos_renyi, scale_free, k_uniform };

inline std::string to_string(GeneratorKind kind) {
    switch (kind) {
        case GeneratorKind::erdos_renyi: return "er";
        case GeneratorKind::scale_free: return "sf";
        case GeneratorKind::k_uniform: return "kuf";
    }
    return "?";
}

inline GeneratorKind generator_kind_from_string(const std::string& s) {
    if (s == "er") return GeneratorKind::erdos_renyi;
    if (s == "sf") return GeneratorKind::scale_free;
    if (s == "kuf") return GeneratorKind::k_uniform;
    throw UsageError("unknown generator kind '" + s + "' (expected er, sf, or kuf)");
}

/// param means: mean hyperdegree (er), power-law exponent (sf), or fixed
/// hyperedge size (kuf).
struct GeneratorSpec {
    GeneratorKind kind = GeneratorKind::erdos_renyi;
    NodeId nodes = 0;
    EdgeId edges = 0;
    double param = 0.0;
    double threshold = 0.5;
    std::uint64_t rng_seed = 0;
};

/// Generator output; realized edge count is graph.edge_count() since empty
/// hyperedges are dropped.
struct GeneratedHypergraph {
    Hypergraph graph;
    GeneratorSpec spec;
    EdgeId dropped_edges = 0;
};

namespace detail {

// k distinct values from [0, n) (Floyd's algorithm), emitted in ascending
// order for reproducibility.
inline std::vector<NodeId> sample_distinct(std::mt19937_64& rng, NodeId n, NodeId k,
                                           std::unordered_set<NodeId>& scratch) {
    scratch.clear();
    for (NodeId j = n - k; j < n; ++j) {
        std::uniform_int_distribution<NodeId> dist(0, j);
        NodeId t = dist(rng);
        if (!scratch.insert(t).second) scratch.insert(j);
    }
    std::vector<NodeId> out(scratch.begin(), scratch.end());
    std::sort(out.begin(), out.end());
    return out;
}

inline void validate_common(const GeneratorSpec& spec) {
    if (spec.nodes < 1 || spec.edges < 1)
        throw UsageError("generator needs at least one node and one hyperedge");
    if (!(spec.threshold > 0.0 && spec.threshold < 1.0))
        throw ThresholdOutOfRangeError("threshold must be in (0,1)");
}

inline GeneratedHypergraph assemble(const GeneratorSpec& spec,
                                    std::vector<std::vector<NodeId>>&& members) {
    EdgeId dropped = 0;
    std::vector<std::vector<NodeId>> kept;
    kept.reserve(members.size());
    for (auto& edge : members) {
        if (edge.empty())
            ++dropped;
        else
            kept.push_back(std::move(edge));
    }
    GeneratedHypergraph out;
    out.spec = spec;
    out.dropped_edges = dropped;
    out.graph = Hypergraph(spec.nodes, std::move(kept), spec.threshold);
    return out;
}

}  // namespace detail

/// Bipartite Erdos-Renyi: every (node, hyperedge) incidence appears
/// independently with p = <k>/M, giving mean hyperdegree param. Hyperedges
/// that end up empty are dropped.
inline GeneratedHypergraph gen_er(const GeneratorSpec& spec) {
    detail::validate_common(spec);
    const double p = spec.param / static_cast<double>(spec.edges);
    if (!(p >= 0.0 && p <= 1.0))
        throw InvalidProbabilityError("mean hyperdegree / edge count must lie in [0,1]");
    std::mt19937_64 rng(spec.rng_seed);
    std::vector<std::vector<NodeId>> members(static_cast<std::size_t>(spec.edges));
    std::binomial_distribution<EdgeId> degree_dist(spec.edges, p);
    std::unordered_set<NodeId> scratch;
    for (NodeId i = 0; i < spec.nodes; ++i) {
        EdgeId degree = degree_dist(rng);
        for (NodeId e : detail::sample_distinct(rng, spec.edges, degree, scratch))
            members[static_cast<std::size_t>(e)].push_back(i);
    }
    return detail::assemble(spec, std::move(members));
}

/// Scale-free hyperdegrees: each node draws k from P(k) ~ k^-gamma on
/// [1, ceil(sqrt(N))] and throws k stubs at uniformly random hyperedges;
/// duplicate incidences collapse, empty hyperedges are dropped.
inline GeneratedHypergraph gen_sf(const GeneratorSpec& spec) {
    detail::validate_common(spec);
    if (!(spec.param > 1.0)) throw UsageError("power-law exponent must exceed 1");
    const int k_max = std::max(1, static_cast<int>(std::ceil(std::sqrt(spec.nodes))));
    std::vector<double> weights(static_cast<std::size_t>(k_max));
    for (int k = 1; k <= k_max; ++k)
        weights[static_cast<std::size_t>(k - 1)] =
            std::pow(static_cast<double>(k), -spec.param);
    std::discrete_distribution<int> degree_dist(weights.begin(), weights.end());
    std::uniform_int_distribution<EdgeId> edge_dist(0, spec.edges - 1);

    std::mt19937_64 rng(spec.rng_seed);
    std::vector<std::vector<NodeId>> members(static_cast<std::size_t>(spec.edges));
    std::vector<EdgeId> stubs;
    for (NodeId i = 0; i < spec.nodes; ++i) {
        int degree = degree_dist(rng) + 1;
        stubs.clear();
        for (int s = 0; s < degree; ++s) stubs.push_back(edge_dist(rng));
        std::sort(stubs.begin(), stubs.end());
        stubs.erase(std::unique(stubs.begin(), stubs.end()), stubs.end());
        for (EdgeId e : stubs) members[static_cast<std::size_t>(e)].push_back(i);
    }
    return detail::assemble(spec, std::move(members));
}

/// K-uniform: every hyperedge is K distinct nodes drawn uniformly without
/// replacement; duplicate hyperedges may occur.
inline GeneratedHypergraph gen_kuniform(const GeneratorSpec& spec) {
    detail::validate_common(spec);
    const NodeId k = static_cast<NodeId>(spec.param);
    if (k < 1 || static_cast<double>(k) != spec.param)
        throw UsageError("hyperedge size must be a positive integer");
    if (k > spec.nodes)
        throw EdgeSizeTooLargeError("hyperedge size exceeds node count");
    std::mt19937_64 rng(spec.rng_seed);
    std::vector<std::vector<NodeId>> members(static_cast<std::size_t>(spec.edges));
    std::unordered_set<NodeId> scratch;
    for (EdgeId e = 0; e < spec.edges; ++e)
        members[static_cast<std::size_t>(e)] = detail::sample_distinct(rng, spec.nodes, k, scratch);
    return detail::assemble(spec, std::move(members));
}

inline GeneratedHypergraph generate(const GeneratorSpec& spec) {
    switch (spec.kind) {
        case GeneratorKind::erdos_renyi: return gen_er(spec);
        case GeneratorKind::scale_free: return gen_sf(spec);
        case GeneratorKind::k_uniform: return gen_kuniform(spec);
    }
    throw UsageError("unknown generator kind");
}

}  // namespace hyperinf

#endif  // HYPERINF_GENERATORS_HPP
