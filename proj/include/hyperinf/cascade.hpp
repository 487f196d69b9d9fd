#ifndef HYPERINF_CASCADE_HPP
#define HYPERINF_CASCADE_HPP

#include <algorithm>
#include <ostream>
#include <span>
#include <vector>

#include "hyperinf/hypergraph.hpp"

namespace hyperinf {

enum class ElementKind { node, edge };

struct TraceEntry {
    int time;
    ElementKind kind;
    std::int32_t id;
    bool operator==(const TraceEntry&) const = default;
};

/// Activation state of a cascade run. Activation is monotone; "removal" of
/// activated structure (selectors, HCI) is expressed by reading these flags
/// as a mask, never by structural deletion.
///
/// Per-edge active member counts and per-node active incident edge counts are
/// maintained incrementally so residual requirements and masked hyperdegrees
/// are O(1).
class CascadeState {
public:
    CascadeState() = default;
    explicit CascadeState(const Hypergraph& h, bool record_trace = false)
        : node_active_(static_cast<std::size_t>(h.node_count()), 0),
          edge_active_(static_cast<std::size_t>(h.edge_count()), 0),
          active_members_(static_cast<std::size_t>(h.edge_count()), 0),
          active_incident_(static_cast<std::size_t>(h.node_count()), 0),
          recording_(record_trace) {}

    bool node_active(NodeId i) const { return node_active_[static_cast<std::size_t>(i)] != 0; }
    bool edge_active(EdgeId e) const { return edge_active_[static_cast<std::size_t>(e)] != 0; }

    /// Number of active members of hyperedge e (maintained even while e is
    /// itself inactive).
    int active_members(EdgeId e) const { return active_members_[static_cast<std::size_t>(e)]; }

    /// Number of active hyperedges incident to node i.
    int active_incident_edges(NodeId i) const {
        return active_incident_[static_cast<std::size_t>(i)];
    }

    NodeId active_node_count() const { return active_nodes_; }
    EdgeId active_edge_count() const { return active_edges_; }

    NodeId node_count() const { return static_cast<NodeId>(node_active_.size()); }
    EdgeId edge_count() const { return static_cast<EdgeId>(edge_active_.size()); }

    /// Final active-node fraction Q.
    double activation_fraction() const {
        return node_active_.empty() ? 0.0
                                    : static_cast<double>(active_nodes_) /
                                          static_cast<double>(node_active_.size());
    }

    const std::vector<TraceEntry>& trace() const { return trace_; }
    int steps() const { return steps_; }
    bool recording() const { return recording_; }

    /// Marks node i active at the given time. Returns false if it already was.
    bool activate_node(const Hypergraph& h, NodeId i, int time) {
        auto& flag = node_active_[static_cast<std::size_t>(i)];
        if (flag) return false;
        flag = 1;
        ++active_nodes_;
        for (EdgeId e : h.incident_edges(i)) ++active_members_[static_cast<std::size_t>(e)];
        if (recording_) trace_.push_back({time, ElementKind::node, i});
        steps_ = std::max(steps_, time);
        return true;
    }

    /// Marks hyperedge e active at the given time. Returns false if it
    /// already was.
    bool activate_edge(const Hypergraph& h, EdgeId e, int time) {
        auto& flag = edge_active_[static_cast<std::size_t>(e)];
        if (flag) return false;
        flag = 1;
        ++active_edges_;
        for (NodeId v : h.members(e)) ++active_incident_[static_cast<std::size_t>(v)];
        if (recording_) trace_.push_back({time, ElementKind::edge, e});
        steps_ = std::max(steps_, time);
        return true;
    }

    int clock() const { return clock_; }
    void set_clock(int t) { clock_ = t; }

private:
    std::vector<std::uint8_t> node_active_;
    std::vector<std::uint8_t> edge_active_;
    std::vector<int> active_members_;
    std::vector<int> active_incident_;
    std::vector<TraceEntry> trace_;
    NodeId active_nodes_ = 0;
    EdgeId active_edges_ = 0;
    int steps_ = 0;
    int clock_ = 0;  // next even (node-activation) time
    bool recording_ = false;
};

struct CascadeResult {
    double activation_fraction = 0.0;
    CascadeState state;
};

/// Elements newly activated by one advance_cascade call, in activation order.
struct NewlyActivated {
    std::vector<NodeId> nodes;
    std::vector<EdgeId> edges;
};

/// Continues the synchronous threshold dynamics from an existing state after
/// seeding `new_seeds`: hyperedges whose active member count reaches
/// activation_count fire on odd times, then every member of a fired
/// hyperedge activates on the next even time, until a round activates
/// nothing. Already-active seeds are ignored.
inline void advance_cascade(const Hypergraph& h, CascadeState& state,
                            std::span<const NodeId> new_seeds, NewlyActivated* newly = nullptr) {
    if (state.node_count() != h.node_count() || state.edge_count() != h.edge_count())
        throw SizeMismatchError("cascade state does not match hypergraph");
    int t = state.clock();
    std::vector<NodeId> frontier;
    for (NodeId s : new_seeds) {
        if (!h.valid_node(s)) throw UnknownNodeError("seed id out of range");
        if (state.activate_node(h, s, t)) {
            frontier.push_back(s);
            if (newly) newly->nodes.push_back(s);
        }
    }
    while (!frontier.empty()) {
        std::vector<EdgeId> fired;
        for (NodeId u : frontier) {
            for (EdgeId e : h.incident_edges(u)) {
                if (state.edge_active(e)) continue;
                if (state.active_members(e) >= h.activation_count(e)) fired.push_back(e);
            }
        }
        std::sort(fired.begin(), fired.end());
        fired.erase(std::unique(fired.begin(), fired.end()), fired.end());
        frontier.clear();
        for (EdgeId e : fired) {
            if (!state.activate_edge(h, e, t + 1)) continue;
            if (newly) newly->edges.push_back(e);
            for (NodeId v : h.members(e))
                if (!state.node_active(v)) frontier.push_back(v);
        }
        std::sort(frontier.begin(), frontier.end());
        frontier.erase(std::unique(frontier.begin(), frontier.end()), frontier.end());
        t += 2;
        for (NodeId v : frontier) {
            state.activate_node(h, v, t);
            if (newly) newly->nodes.push_back(v);
        }
    }
    state.set_clock(t);
}

/// Runs the full cascade from a seed vector on a fresh state. With
/// record_trace the timed activation sets U(t) are kept: seeds at t=0,
/// hyperedges at odd t, nodes at even t.
inline CascadeResult run_cascade(const Hypergraph& h, const SeedVector& seeds,
                                 bool record_trace = false) {
    if (seeds.size() != h.node_count())
        throw SizeMismatchError("seed vector does not match hypergraph");
    CascadeState state(h, record_trace);
    std::vector<NodeId> seed_nodes = seeds.nodes();
    advance_cascade(h, state, seed_nodes);
    return {state.activation_fraction(), std::move(state)};
}

inline double activation_fraction(const CascadeResult& r) { return r.activation_fraction; }
inline double activation_fraction(const CascadeState& s) { return s.activation_fraction(); }

/// r_e = max(0, m_e - active members): how many further member activations
/// hyperedge e still needs. Only meaningful for inactive hyperedges.
inline int residual_requirement(const Hypergraph& h, const CascadeState& state, EdgeId e) {
    if (!h.valid_edge(e)) throw UnknownIdError("unknown hyperedge id");
    if (state.edge_active(e)) throw EdgeAlreadyActiveError("hyperedge already active");
    return std::max(0, h.activation_count(e) - state.active_members(e));
}

/// Trace export: one row per newly activated element.
inline void write_trace_csv(std::ostream& out, const std::vector<TraceEntry>& trace) {
    out << "t,kind,id\n";
    for (const auto& entry : trace)
        out << entry.time << ',' << (entry.kind == ElementKind::node ? "node" : "edge") << ','
            << entry.id << "\n";
}

}  // namespace hyperinf

#endif  // HYPERINF_CASCADE_HPP
