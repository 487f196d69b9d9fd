#ifndef HYPERINF_HYPERGRAPH_HPP
#define HYPERINF_HYPERGRAPH_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hyperinf/errors.hpp"

namespace hyperinf {

using NodeId = std::int32_t;
using EdgeId = std::int32_t;
using NodeLabel = std::int64_t;

/// Immutable hypergraph with bidirectional incidence and per-hyperedge
/// activation thresholds. Node and hyperedge ids are dense and 0-based;
/// external node labels (e.g. ids from a file) are kept alongside.
///
/// A hyperedge with size s and threshold t activates once ceil(t*s) of its
/// members are active; that count is precomputed as activation_count().
class Hypergraph {
public:
    Hypergraph() = default;

    /// Direct construction from dense 0-based member lists. Labels default
    /// to the identity mapping.
    Hypergraph(NodeId node_count, std::vector<std::vector<NodeId>> edge_members,
               std::vector<double> thresholds)
        : members_(std::move(edge_members)), thresholds_(std::move(thresholds)) {
        if (thresholds_.size() != members_.size())
            throw SizeMismatchError("one threshold per hyperedge required");
        node_labels_.resize(static_cast<std::size_t>(node_count));
        std::iota(node_labels_.begin(), node_labels_.end(), NodeLabel{0});
        finish_construction(node_count);
    }

    Hypergraph(NodeId node_count, std::vector<std::vector<NodeId>> edge_members,
               double uniform_threshold)
        : members_(std::move(edge_members)),
          thresholds_(members_.size(), uniform_threshold) {
        node_labels_.resize(static_cast<std::size_t>(node_count));
        std::iota(node_labels_.begin(), node_labels_.end(), NodeLabel{0});
        finish_construction(node_count);
    }

    NodeId node_count() const { return static_cast<NodeId>(node_labels_.size()); }
    EdgeId edge_count() const { return static_cast<EdgeId>(members_.size()); }

    const std::vector<NodeId>& members(EdgeId e) const { return members_[check_edge(e)]; }
    const std::vector<EdgeId>& incident_edges(NodeId i) const { return incident_[check_node(i)]; }

    double threshold(EdgeId e) const { return thresholds_[check_edge(e)]; }
    int edge_size(EdgeId e) const { return static_cast<int>(members_[check_edge(e)].size()); }

    /// m_gamma: least number of active members that activates the hyperedge.
    int activation_count(EdgeId e) const { return activation_counts_[check_edge(e)]; }

    /// k_i: number of hyperedges incident to node i.
    int hyperdegree(NodeId i) const { return static_cast<int>(incident_[check_node(i)].size()); }

    /// S = sum_i k_i = sum_e |e|: incidence pair count (arcs per direction).
    std::int64_t arc_count() const { return arc_count_; }

    NodeLabel node_label(NodeId i) const { return node_labels_[check_node(i)]; }
    const std::vector<NodeLabel>& node_labels() const { return node_labels_; }

    /// Dense internal id for an external label, if present.
    std::optional<NodeId> find_label(NodeLabel label) const {
        auto it = label_index_.find(label);
        if (it == label_index_.end()) return std::nullopt;
        return it->second;
    }

    bool valid_node(NodeId i) const { return i >= 0 && i < node_count(); }
    bool valid_edge(EdgeId e) const { return e >= 0 && e < edge_count(); }

    /// Builds a hypergraph from hyperedge member lists given as external
    /// labels. Distinct labels are mapped to dense ids in ascending label
    /// order. Empty lists, repeated members within a list, and thresholds
    /// outside (0,1) are rejected.
    static Hypergraph from_edge_lists(const std::vector<std::vector<NodeLabel>>& edges,
                                      const std::vector<double>& thresholds) {
        if (thresholds.size() != edges.size())
            throw SizeMismatchError("one threshold per hyperedge required");
        std::vector<NodeLabel> labels;
        for (const auto& edge : edges) {
            if (edge.empty()) throw EmptyEdgeError("hyperedge with no members");
            for (NodeLabel v : edge) {
                if (v < 0) throw UnknownNodeError("node ids must be non-negative");
                labels.push_back(v);
            }
        }
        std::sort(labels.begin(), labels.end());
        labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
        std::unordered_map<NodeLabel, NodeId> index;
        index.reserve(labels.size());
        for (std::size_t k = 0; k < labels.size(); ++k)
            index.emplace(labels[k], static_cast<NodeId>(k));

        std::vector<std::vector<NodeId>> dense(edges.size());
        for (std::size_t e = 0; e < edges.size(); ++e) {
            dense[e].reserve(edges[e].size());
            for (NodeLabel v : edges[e]) dense[e].push_back(index.at(v));
        }
        Hypergraph h(static_cast<NodeId>(labels.size()), std::move(dense), thresholds);
        h.node_labels_ = std::move(labels);
        h.rebuild_label_index();
        return h;
    }

    static Hypergraph from_edge_lists(const std::vector<std::vector<NodeLabel>>& edges,
                                      double uniform_threshold) {
        return from_edge_lists(edges, std::vector<double>(edges.size(), uniform_threshold));
    }

    /// Replaces external labels (used by sub-hypergraph extraction to keep
    /// original ids visible).
    void relabel(std::vector<NodeLabel> labels) {
        if (labels.size() != node_labels_.size())
            throw SizeMismatchError("label vector size mismatch");
        node_labels_ = std::move(labels);
        rebuild_label_index();
    }

private:
    NodeId check_node(NodeId i) const {
        if (!valid_node(i)) throw UnknownNodeError("unknown node id " + std::to_string(i));
        return i;
    }
    EdgeId check_edge(EdgeId e) const {
        if (!valid_edge(e)) throw UnknownIdError("unknown hyperedge id " + std::to_string(e));
        return e;
    }

    void finish_construction(NodeId node_count) {
        incident_.assign(static_cast<std::size_t>(node_count), {});
        activation_counts_.resize(members_.size());
        arc_count_ = 0;
        std::vector<EdgeId> seen_at(static_cast<std::size_t>(node_count), -1);
        for (EdgeId e = 0; e < static_cast<EdgeId>(members_.size()); ++e) {
            const auto& edge = members_[e];
            if (edge.empty()) throw EmptyEdgeError("hyperedge with no members");
            double t = thresholds_[e];
            if (!(t > 0.0 && t < 1.0))
                throw ThresholdOutOfRangeError("threshold must be in (0,1), got " +
                                               std::to_string(t));
            for (NodeId v : edge) {
                if (v < 0 || v >= node_count)
                    throw UnknownNodeError("member id out of range: " + std::to_string(v));
                if (seen_at[static_cast<std::size_t>(v)] == e)
                    throw DuplicateMemberError("node " + std::to_string(v) +
                                               " repeated in hyperedge " + std::to_string(e));
                seen_at[static_cast<std::size_t>(v)] = e;
                incident_[static_cast<std::size_t>(v)].push_back(e);
            }
            activation_counts_[e] = compute_activation_count(t, static_cast<int>(edge.size()));
            arc_count_ += static_cast<std::int64_t>(edge.size());
        }
        rebuild_label_index();
    }

    // Least m in [1, size] with m/size >= t under double arithmetic (the
    // "reached or exceeded" rule); ceil gives the estimate, the loops settle
    // rounding at the boundary.
    static int compute_activation_count(double t, int size) {
        int m = static_cast<int>(std::ceil(t * static_cast<double>(size)));
        m = std::clamp(m, 1, size);
        while (m > 1 &&
               static_cast<double>(m - 1) / static_cast<double>(size) >= t)
            --m;
        while (m < size && static_cast<double>(m) / static_cast<double>(size) < t)
            ++m;
        return m;
    }

    void rebuild_label_index() {
        label_index_.clear();
        label_index_.reserve(node_labels_.size());
        for (NodeId i = 0; i < node_count(); ++i) label_index_.emplace(node_labels_[i], i);
    }

    std::vector<std::vector<NodeId>> members_;
    std::vector<std::vector<EdgeId>> incident_;
    std::vector<double> thresholds_;
    std::vector<int> activation_counts_;
    std::vector<NodeLabel> node_labels_;
    std::unordered_map<NodeLabel, NodeId> label_index_;
    std::int64_t arc_count_ = 0;
};

/// k_i accessor in free-function form.
inline int hyperdegree(const Hypergraph& h, NodeId i) { return h.hyperdegree(i); }

/// Largest-component extraction result. node_map/edge_map take new dense ids
/// to the ids they had in the input hypergraph.
struct GiantComponent {
    Hypergraph graph;
    std::vector<NodeId> node_map;
    std::vector<EdgeId> edge_map;
};

/// Extracts the sub-hypergraph induced by the largest connected component of
/// the node-hyperedge bipartite incidence graph. Component size counts both
/// kinds of bipartite vertices; ties go to the component containing the
/// smallest node id. External labels are carried through.
inline GiantComponent giant_component(const Hypergraph& h) {
    const NodeId n = h.node_count();
    const EdgeId m = h.edge_count();
    if (n == 0) return {Hypergraph{}, {}, {}};

    std::vector<int> node_comp(static_cast<std::size_t>(n), -1);
    std::vector<int> edge_comp(static_cast<std::size_t>(m), -1);
    int comp_count = 0;
    std::vector<std::int64_t> comp_size;
    std::vector<NodeId> comp_min_node;

    std::vector<NodeId> stack;
    for (NodeId start = 0; start < n; ++start) {
        if (node_comp[static_cast<std::size_t>(start)] >= 0) continue;
        const int c = comp_count++;
        comp_size.push_back(0);
        comp_min_node.push_back(start);
        stack.assign(1, start);
        node_comp[static_cast<std::size_t>(start)] = c;
        comp_size[static_cast<std::size_t>(c)] = 1;
        while (!stack.empty()) {
            NodeId u = stack.back();
            stack.pop_back();
            for (EdgeId e : h.incident_edges(u)) {
                if (edge_comp[static_cast<std::size_t>(e)] >= 0) continue;
                edge_comp[static_cast<std::size_t>(e)] = c;
                ++comp_size[static_cast<std::size_t>(c)];
                for (NodeId v : h.members(e)) {
                    if (node_comp[static_cast<std::size_t>(v)] >= 0) continue;
                    node_comp[static_cast<std::size_t>(v)] = c;
                    ++comp_size[static_cast<std::size_t>(c)];
                    stack.push_back(v);
                }
            }
        }
    }

    int best = 0;
    for (int c = 1; c < comp_count; ++c) {
        if (comp_size[static_cast<std::size_t>(c)] > comp_size[static_cast<std::size_t>(best)] ||
            (comp_size[static_cast<std::size_t>(c)] == comp_size[static_cast<std::size_t>(best)] &&
             comp_min_node[static_cast<std::size_t>(c)] < comp_min_node[static_cast<std::size_t>(best)]))
            best = c;
    }

    GiantComponent out;
    std::vector<NodeId> new_node(static_cast<std::size_t>(n), -1);
    std::vector<NodeLabel> labels;
    for (NodeId i = 0; i < n; ++i) {
        if (node_comp[static_cast<std::size_t>(i)] != best) continue;
        new_node[static_cast<std::size_t>(i)] = static_cast<NodeId>(out.node_map.size());
        out.node_map.push_back(i);
        labels.push_back(h.node_label(i));
    }
    std::vector<std::vector<NodeId>> edge_members;
    std::vector<double> thresholds;
    for (EdgeId e = 0; e < m; ++e) {
        if (edge_comp[static_cast<std::size_t>(e)] != best) continue;
        out.edge_map.push_back(e);
        std::vector<NodeId> mapped;
        mapped.reserve(h.members(e).size());
        for (NodeId v : h.members(e)) mapped.push_back(new_node[static_cast<std::size_t>(v)]);
        edge_members.push_back(std::move(mapped));
        thresholds.push_back(h.threshold(e));
    }
    out.graph = Hypergraph(static_cast<NodeId>(out.node_map.size()), std::move(edge_members),
                           std::move(thresholds));
    out.graph.relabel(std::move(labels));
    return out;
}

/// Reusable scratch for repeated neighborhood searches; visit generations
/// avoid re-zeroing the stamp arrays between calls.
class BallWorkspace {
public:
    void visit(const Hypergraph& h, std::span<const NodeId> node_roots,
               std::span<const EdgeId> edge_roots, int layers, std::vector<NodeId>& out) {
        if (layers < 0) throw UnknownIdError("negative layer count");
        node_stamp_.resize(static_cast<std::size_t>(h.node_count()), 0);
        edge_stamp_.resize(static_cast<std::size_t>(h.edge_count()), 0);
        const std::uint32_t gen = ++generation_;
        out.clear();
        frontier_.clear();

        for (NodeId r : node_roots) {
            if (!h.valid_node(r)) throw UnknownIdError("unknown node root " + std::to_string(r));
            if (node_stamp_[static_cast<std::size_t>(r)] != gen) {
                node_stamp_[static_cast<std::size_t>(r)] = gen;
                frontier_.push_back(r);
                out.push_back(r);
            }
        }
        for (EdgeId r : edge_roots) {
            if (!h.valid_edge(r)) throw UnknownIdError("unknown edge root " + std::to_string(r));
            if (edge_stamp_[static_cast<std::size_t>(r)] == gen) continue;
            edge_stamp_[static_cast<std::size_t>(r)] = gen;
            for (NodeId v : h.members(r)) {
                if (node_stamp_[static_cast<std::size_t>(v)] != gen) {
                    node_stamp_[static_cast<std::size_t>(v)] = gen;
                    frontier_.push_back(v);
                    out.push_back(v);
                }
            }
        }

        for (int layer = 0; layer < layers && !frontier_.empty(); ++layer) {
            next_.clear();
            for (NodeId u : frontier_) {
                for (EdgeId e : h.incident_edges(u)) {
                    if (edge_stamp_[static_cast<std::size_t>(e)] == gen) continue;
                    edge_stamp_[static_cast<std::size_t>(e)] = gen;
                    for (NodeId v : h.members(e)) {
                        if (node_stamp_[static_cast<std::size_t>(v)] != gen) {
                            node_stamp_[static_cast<std::size_t>(v)] = gen;
                            next_.push_back(v);
                            out.push_back(v);
                        }
                    }
                }
            }
            std::swap(frontier_, next_);
        }
        std::sort(out.begin(), out.end());
    }

private:
    std::vector<std::uint32_t> node_stamp_;
    std::vector<std::uint32_t> edge_stamp_;
    std::vector<NodeId> frontier_;
    std::vector<NodeId> next_;
    std::uint32_t generation_ = 0;
};

/// Nodes within `layers` node->edge->node hops of the roots. Node roots are
/// included at distance zero; an edge root contributes its members and then
/// `layers` full hops from them. Returned sorted ascending.
inline std::vector<NodeId> bipartite_ball(const Hypergraph& h, std::span<const NodeId> node_roots,
                                          std::span<const EdgeId> edge_roots, int layers) {
    BallWorkspace workspace;
    std::vector<NodeId> out;
    workspace.visit(h, node_roots, edge_roots, layers, out);
    return out;
}

/// Boolean seed assignment over nodes; q = seeded fraction.
class SeedVector {
public:
    SeedVector() = default;
    explicit SeedVector(NodeId size) : seeded_(static_cast<std::size_t>(size), 0) {}

    static SeedVector from_nodes(NodeId size, std::span<const NodeId> nodes) {
        SeedVector s(size);
        for (NodeId i : nodes) s.set(i, true);
        return s;
    }

    NodeId size() const { return static_cast<NodeId>(seeded_.size()); }

    bool is_seed(NodeId i) const {
        check(i);
        return seeded_[static_cast<std::size_t>(i)] != 0;
    }

    void set(NodeId i, bool value) {
        check(i);
        auto& slot = seeded_[static_cast<std::size_t>(i)];
        if (slot == static_cast<std::uint8_t>(value)) return;
        slot = static_cast<std::uint8_t>(value);
        count_ += value ? 1 : -1;
    }

    NodeId seed_count() const { return count_; }

    double fraction() const {
        return seeded_.empty() ? 0.0
                               : static_cast<double>(count_) / static_cast<double>(seeded_.size());
    }

    std::vector<NodeId> nodes() const {
        std::vector<NodeId> out;
        for (NodeId i = 0; i < size(); ++i)
            if (seeded_[static_cast<std::size_t>(i)]) out.push_back(i);
        return out;
    }

private:
    void check(NodeId i) const {
        if (i < 0 || i >= size()) throw UnknownNodeError("seed index out of range");
    }
    std::vector<std::uint8_t> seeded_;
    NodeId count_ = 0;
};

}  // namespace hyperinf

#endif  // HYPERINF_HYPERGRAPH_HPP
