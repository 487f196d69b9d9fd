#ifndef HYPERINF_HCI_HPP
#define HYPERINF_HCI_HPP

#include <array>
#include <cstdint>
#include <ostream>
#include <vector>

#include "hyperinf/cascade.hpp"
#include "hyperinf/hypergraph.hpp"

namespace hyperinf {

/// Hard cap on the HCI order (path searches grow with n).
inline constexpr int kMaxHciOrder = 8;

/// Per-node HCI_n scores against one activation state.
struct HciTable {
    int order = 0;
    std::vector<std::int64_t> scores;
};

/// Alternating node/edge element sequence starting at a node. elements[0] is
/// the start node, odd positions are hyperedge ids, even positions node ids.
/// The arc length is elements.size() - 1.
struct SubcriticalPath {
    std::vector<std::int32_t> elements;
    int length() const { return static_cast<int>(elements.size()) - 1; }
};

/// Hyperdegree of node i on the masked hypergraph: incident hyperedges that
/// are still inactive.
inline int masked_hyperdegree(const Hypergraph& h, const CascadeState& state, NodeId i) {
    return h.hyperdegree(i) - state.active_incident_edges(i);
}

namespace detail {

// Inactive hyperedge one activation short of firing; with the path's own
// (inactive) endpoints excluded, this is exactly the subcritical-hyperedge
// indicator.
inline bool edge_subcritical(const Hypergraph& h, const CascadeState& state, EdgeId e) {
    return h.activation_count(e) - state.active_members(e) == 1;
}

// Self-avoidance bookkeeping; path depth is bounded by kMaxHciOrder.
struct PathScratch {
    std::array<NodeId, kMaxHciOrder + 2> nodes{};
    std::array<EdgeId, kMaxHciOrder + 2> edges{};
    int node_count = 0;
    int edge_count = 0;

    bool has_node(NodeId v) const {
        for (int k = 0; k < node_count; ++k)
            if (nodes[static_cast<std::size_t>(k)] == v) return true;
        return false;
    }
    bool has_edge(EdgeId e) const {
        for (int k = 0; k < edge_count; ++k)
            if (edges[static_cast<std::size_t>(k)] == e) return true;
        return false;
    }
    void push_node(NodeId v) { nodes[static_cast<std::size_t>(node_count++)] = v; }
    void push_edge(EdgeId e) { edges[static_cast<std::size_t>(edge_count++)] = e; }
    void pop_node() { --node_count; }
    void pop_edge() { --edge_count; }
};

// Counts self-avoiding alternating paths continuing from u with up to
// arcs_left further arcs. Every path element must be inactive; extending
// through a hyperedge requires it subcritical, extending through a node
// requires it non-seed with no other active incident hyperedge.
inline std::int64_t count_paths_from(const Hypergraph& h, const CascadeState& state,
                                     const SeedVector& seeds, NodeId u, int arcs_left,
                                     PathScratch& scratch) {
    std::int64_t total = 0;
    for (EdgeId e : h.incident_edges(u)) {
        if (state.edge_active(e) || scratch.has_edge(e)) continue;
        ++total;
        if (arcs_left < 2 || !edge_subcritical(h, state, e)) continue;
        for (NodeId j : h.members(e)) {
            if (j == u || scratch.has_node(j)) continue;
            if (state.node_active(j) || seeds.is_seed(j)) continue;
            ++total;
            if (arcs_left >= 3 && state.active_incident_edges(j) == 0) {
                scratch.push_edge(e);
                scratch.push_node(j);
                total += count_paths_from(h, state, seeds, j, arcs_left - 2, scratch);
                scratch.pop_node();
                scratch.pop_edge();
            }
        }
    }
    return total;
}

inline void collect_paths_from(const Hypergraph& h, const CascadeState& state,
                               const SeedVector& seeds, NodeId u, int arcs_left,
                               PathScratch& scratch, std::vector<std::int32_t>& prefix,
                               std::vector<SubcriticalPath>& out) {
    for (EdgeId e : h.incident_edges(u)) {
        if (state.edge_active(e) || scratch.has_edge(e)) continue;
        prefix.push_back(e);
        out.push_back({prefix});
        if (arcs_left >= 2 && edge_subcritical(h, state, e)) {
            for (NodeId j : h.members(e)) {
                if (j == u || scratch.has_node(j)) continue;
                if (state.node_active(j) || seeds.is_seed(j)) continue;
                prefix.push_back(j);
                out.push_back({prefix});
                if (arcs_left >= 3 && state.active_incident_edges(j) == 0) {
                    scratch.push_edge(e);
                    scratch.push_node(j);
                    collect_paths_from(h, state, seeds, j, arcs_left - 2, scratch, prefix, out);
                    scratch.pop_node();
                    scratch.pop_edge();
                }
                prefix.pop_back();
            }
        }
        prefix.pop_back();
    }
}

inline void check_order(int n, int cap) {
    if (n < 0) throw DepthTooLargeError("HCI order must be non-negative");
    if (n > cap) throw DepthTooLargeError("HCI order " + std::to_string(n) +
                                          " exceeds cap " + std::to_string(cap));
}

}  // namespace detail

/// HCI_n of one node: number of subcritical paths starting at i with arc
/// length 1..n+1 on the masked hypergraph. Active nodes score 0.
inline std::int64_t hci_score(const Hypergraph& h, const CascadeState& state,
                              const SeedVector& seeds, NodeId i, int n,
                              int cap = kMaxHciOrder) {
    detail::check_order(n, cap);
    if (!h.valid_node(i)) throw UnknownNodeError("unknown node id");
    if (state.node_active(i)) return 0;
    detail::PathScratch scratch;
    scratch.push_node(i);
    return detail::count_paths_from(h, state, seeds, i, n + 1, scratch);
}

/// HCI_n for every node.
inline HciTable hci_n(const Hypergraph& h, const CascadeState& state, const SeedVector& seeds,
                      int n, int cap = kMaxHciOrder) {
    detail::check_order(n, cap);
    HciTable table{n, std::vector<std::int64_t>(static_cast<std::size_t>(h.node_count()), 0)};
    for (NodeId i = 0; i < h.node_count(); ++i)
        table.scores[static_cast<std::size_t>(i)] = hci_score(h, state, seeds, i, n, cap);
    return table;
}

/// HCI_0: masked hyperdegree (inactive incident hyperedges of inactive nodes).
inline HciTable hci0(const Hypergraph& h, const CascadeState& state) {
    HciTable table{0, std::vector<std::int64_t>(static_cast<std::size_t>(h.node_count()), 0)};
    for (NodeId i = 0; i < h.node_count(); ++i) {
        if (state.node_active(i)) continue;
        table.scores[static_cast<std::size_t>(i)] = masked_hyperdegree(h, state, i);
    }
    return table;
}

/// HCI_1 closed form: masked hyperdegree plus, per inactive subcritical
/// incident hyperedge, the number of its other inactive members.
inline HciTable hci1(const Hypergraph& h, const CascadeState& state) {
    HciTable table{1, std::vector<std::int64_t>(static_cast<std::size_t>(h.node_count()), 0)};
    for (NodeId i = 0; i < h.node_count(); ++i) {
        if (state.node_active(i)) continue;
        std::int64_t score = 0;
        for (EdgeId e : h.incident_edges(i)) {
            if (state.edge_active(e)) continue;
            ++score;
            if (!detail::edge_subcritical(h, state, e)) continue;
            for (NodeId j : h.members(e))
                if (j != i && !state.node_active(j)) ++score;
        }
        table.scores[static_cast<std::size_t>(i)] = score;
    }
    return table;
}

/// HCI_2 closed form: HCI_1 plus the arc-length-3 continuations through
/// non-seed subcritical neighbors.
inline HciTable hci2(const Hypergraph& h, const CascadeState& state, const SeedVector& seeds) {
    HciTable table = hci1(h, state);
    table.order = 2;
    for (NodeId i = 0; i < h.node_count(); ++i) {
        if (state.node_active(i)) continue;
        std::int64_t extra = 0;
        for (EdgeId e : h.incident_edges(i)) {
            if (state.edge_active(e) || !detail::edge_subcritical(h, state, e)) continue;
            for (NodeId j : h.members(e)) {
                if (j == i || state.node_active(j) || seeds.is_seed(j)) continue;
                if (state.active_incident_edges(j) != 0) continue;
                for (EdgeId f : h.incident_edges(j))
                    if (f != e && !state.edge_active(f)) ++extra;
            }
        }
        table.scores[static_cast<std::size_t>(i)] += extra;
    }
    return table;
}

/// Exhaustive enumeration of the subcritical paths hci_n counts, up to
/// max_len arcs. Intended as the stratified oracle for the closed forms.
inline std::vector<SubcriticalPath> enumerate_subcritical_paths(
    const Hypergraph& h, const CascadeState& state, const SeedVector& seeds, NodeId i,
    int max_len, int cap = kMaxHciOrder) {
    if (max_len < 1) throw DepthTooLargeError("path length must be at least 1");
    if (max_len > cap + 1)
        throw DepthTooLargeError("path length " + std::to_string(max_len) + " exceeds cap");
    if (!h.valid_node(i)) throw UnknownNodeError("unknown node id");
    std::vector<SubcriticalPath> out;
    if (state.node_active(i)) return out;
    detail::PathScratch scratch;
    scratch.push_node(i);
    std::vector<std::int32_t> prefix{i};
    detail::collect_paths_from(h, state, seeds, i, max_len, scratch, prefix, out);
    return out;
}

/// Score dump sorted by node id.
inline void write_hci_csv(std::ostream& out, const HciTable& table) {
    out << "node,hci_" << table.order << "\n";
    for (std::size_t i = 0; i < table.scores.size(); ++i)
        out << i << ',' << table.scores[i] << "\n";
}

}  // namespace hyperinf

#endif  // HYPERINF_HCI_HPP
