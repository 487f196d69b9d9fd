#ifndef HYPERINF_MESSAGE_PASSING_HPP
#define HYPERINF_MESSAGE_PASSING_HPP

#include <algorithm>
#include <ostream>
#include <vector>

#include "hyperinf/cascade.hpp"
#include "hyperinf/hypergraph.hpp"

namespace hyperinf {

/// Flat indexing for the directed incidence arcs. Node->edge arcs are laid
/// out per node in incident-list order, edge->node arcs per hyperedge in
/// member order; the cross maps pair up the two slots of one incidence.
class ArcIndex {
public:
    explicit ArcIndex(const Hypergraph& h) {
        const NodeId n = h.node_count();
        const EdgeId m = h.edge_count();
        node_offset_.resize(static_cast<std::size_t>(n) + 1, 0);
        for (NodeId i = 0; i < n; ++i)
            node_offset_[static_cast<std::size_t>(i) + 1] =
                node_offset_[static_cast<std::size_t>(i)] + h.hyperdegree(i);
        edge_offset_.resize(static_cast<std::size_t>(m) + 1, 0);
        for (EdgeId e = 0; e < m; ++e)
            edge_offset_[static_cast<std::size_t>(e) + 1] =
                edge_offset_[static_cast<std::size_t>(e)] + h.edge_size(e);

        const std::int64_t total = node_offset_.back();
        to_edge_slot_.resize(static_cast<std::size_t>(total));
        to_node_slot_.resize(static_cast<std::size_t>(total));
        std::vector<std::int64_t> cursor(node_offset_.begin(), node_offset_.end() - 1);
        for (EdgeId e = 0; e < m; ++e) {
            const auto& edge = h.members(e);
            for (std::size_t k = 0; k < edge.size(); ++k) {
                std::int64_t edge_slot = edge_offset_[static_cast<std::size_t>(e)] +
                                         static_cast<std::int64_t>(k);
                std::int64_t node_slot = cursor[static_cast<std::size_t>(edge[k])]++;
                to_edge_slot_[static_cast<std::size_t>(node_slot)] = edge_slot;
                to_node_slot_[static_cast<std::size_t>(edge_slot)] = node_slot;
            }
        }
    }

    std::int64_t arc_total() const { return node_offset_.back(); }

    /// Slot of the (i -> e) arc; i must be incident to e.
    std::int64_t node_arc(const Hypergraph& h, NodeId i, EdgeId e) const {
        const auto& inc = h.incident_edges(i);
        for (std::size_t k = 0; k < inc.size(); ++k)
            if (inc[k] == e) return node_offset_[static_cast<std::size_t>(i)] +
                                    static_cast<std::int64_t>(k);
        throw NotIncidentError("node " + std::to_string(i) + " not incident to hyperedge " +
                               std::to_string(e));
    }

    /// Slot of the (e -> i) arc; i must be a member of e.
    std::int64_t edge_arc(const Hypergraph& h, EdgeId e, NodeId i) const {
        const auto& edge = h.members(e);
        for (std::size_t k = 0; k < edge.size(); ++k)
            if (edge[k] == i) return edge_offset_[static_cast<std::size_t>(e)] +
                                     static_cast<std::int64_t>(k);
        throw NotIncidentError("node " + std::to_string(i) + " not a member of hyperedge " +
                               std::to_string(e));
    }

    std::int64_t node_offset(NodeId i) const { return node_offset_[static_cast<std::size_t>(i)]; }
    std::int64_t edge_offset(EdgeId e) const { return edge_offset_[static_cast<std::size_t>(e)]; }
    std::int64_t paired_edge_slot(std::int64_t node_slot) const {
        return to_edge_slot_[static_cast<std::size_t>(node_slot)];
    }
    std::int64_t paired_node_slot(std::int64_t edge_slot) const {
        return to_node_slot_[static_cast<std::size_t>(edge_slot)];
    }

private:
    std::vector<std::int64_t> node_offset_;
    std::vector<std::int64_t> edge_offset_;
    std::vector<std::int64_t> to_edge_slot_;
    std::vector<std::int64_t> to_node_slot_;
};

/// Binary cavity messages on all incidence arcs. v_node_to_edge[(i,e)] is
/// node i's activation with hyperedge e removed; v_edge_to_node[(e,i)] is
/// hyperedge e's activation with node i removed. Updates keep both
/// directions one step behind each other (Jacobi), which yields the
/// two-step periodicity of the dynamics.
class MessageState {
public:
    MessageState() = default;
    MessageState(const Hypergraph& h, const SeedVector& seeds)
        : arcs_(h),
          seeds_(seeds),
          node_to_edge_(static_cast<std::size_t>(arcs_.arc_total()), 0),
          edge_to_node_(static_cast<std::size_t>(arcs_.arc_total()), 0) {
        if (seeds.size() != h.node_count())
            throw SizeMismatchError("seed vector does not match hypergraph");
        for (NodeId i = 0; i < h.node_count(); ++i) {
            if (!seeds.is_seed(i)) continue;
            std::int64_t base = arcs_.node_offset(i);
            for (int k = 0; k < h.hyperdegree(i); ++k)
                node_to_edge_[static_cast<std::size_t>(base + k)] = 1;
        }
    }

    const ArcIndex& arcs() const { return arcs_; }
    const SeedVector& seeds() const { return seeds_; }
    int step() const { return step_; }

    bool node_to_edge(const Hypergraph& h, NodeId i, EdgeId e) const {
        return node_to_edge_[static_cast<std::size_t>(arcs_.node_arc(h, i, e))] != 0;
    }
    bool edge_to_node(const Hypergraph& h, EdgeId e, NodeId i) const {
        return edge_to_node_[static_cast<std::size_t>(arcs_.edge_arc(h, e, i))] != 0;
    }

    std::int64_t ones() const {
        std::int64_t total = 0;
        for (auto v : node_to_edge_) total += v;
        for (auto v : edge_to_node_) total += v;
        return total;
    }

    /// One synchronous update of both directions from the previous state.
    /// Returns the number of messages that changed (monotone, so changes are
    /// always 0 -> 1 flips).
    std::int64_t update(const Hypergraph& h) {
        const NodeId n = h.node_count();
        const EdgeId m = h.edge_count();
        std::vector<std::uint8_t> next_n2e(node_to_edge_.size());
        std::vector<std::uint8_t> next_e2n(edge_to_node_.size());

        for (NodeId i = 0; i < n; ++i) {
            std::int64_t base = arcs_.node_offset(i);
            int deg = h.hyperdegree(i);
            int incoming = 0;
            for (int k = 0; k < deg; ++k)
                incoming += edge_to_node_[static_cast<std::size_t>(
                    arcs_.paired_edge_slot(base + k))];
            bool seed = seeds_.is_seed(i);
            for (int k = 0; k < deg; ++k) {
                int excluded = edge_to_node_[static_cast<std::size_t>(
                    arcs_.paired_edge_slot(base + k))];
                next_n2e[static_cast<std::size_t>(base + k)] =
                    static_cast<std::uint8_t>(seed || (incoming - excluded) > 0);
            }
        }
        for (EdgeId e = 0; e < m; ++e) {
            std::int64_t base = arcs_.edge_offset(e);
            int size = h.edge_size(e);
            int active = 0;
            for (int k = 0; k < size; ++k)
                active += node_to_edge_[static_cast<std::size_t>(
                    arcs_.paired_node_slot(base + k))];
            int needed = h.activation_count(e);
            for (int k = 0; k < size; ++k) {
                int excluded = node_to_edge_[static_cast<std::size_t>(
                    arcs_.paired_node_slot(base + k))];
                next_e2n[static_cast<std::size_t>(base + k)] =
                    static_cast<std::uint8_t>((active - excluded) >= needed);
            }
        }

        std::int64_t changed = 0;
        for (std::size_t a = 0; a < next_n2e.size(); ++a) {
            changed += next_n2e[a] != node_to_edge_[a];
            changed += next_e2n[a] != edge_to_node_[a];
        }
        node_to_edge_ = std::move(next_n2e);
        edge_to_node_ = std::move(next_e2n);
        ++step_;
        return changed;
    }

private:
    ArcIndex arcs_{Hypergraph{}};
    SeedVector seeds_;
    std::vector<std::uint8_t> node_to_edge_;
    std::vector<std::uint8_t> edge_to_node_;
    int step_ = 0;
};

/// v_{i->e} = n_i on every arc, v_{e->i} = 0.
inline MessageState init_messages(const Hypergraph& h, const SeedVector& seeds) {
    return MessageState(h, seeds);
}

/// Applies one update to a copy of the state.
inline MessageState update_step(const Hypergraph& h, const MessageState& state) {
    MessageState next = state;
    next.update(h);
    return next;
}

/// Iterates updates from the seed initialization until no message changes.
/// Binary monotone updates converge within 2(N+M) steps; exceeding that
/// bound means internal corruption.
inline MessageState fixed_point(const Hypergraph& h, const SeedVector& seeds) {
    MessageState state(h, seeds);
    const std::int64_t limit =
        2 * (static_cast<std::int64_t>(h.node_count()) + h.edge_count()) + 2;
    for (std::int64_t iter = 0; iter < limit; ++iter) {
        if (state.update(h) == 0) return state;
    }
    throw NonConvergenceError("message passing failed to reach a fixed point");
}

/// Final node and hyperedge states from a fixed point: a node is active if
/// seeded or any incident cavity message reaches it; a hyperedge is active
/// if its full member set carries at least activation_count active messages.
inline CascadeState final_state(const Hypergraph& h, const MessageState& fp,
                                const SeedVector& seeds) {
    MessageState check = fp;
    if (check.update(h) != 0) throw NotAFixedPointError("state is not a fixed point");
    CascadeState out(h);
    for (NodeId i = 0; i < h.node_count(); ++i) {
        bool active = seeds.is_seed(i);
        for (EdgeId e : h.incident_edges(i)) {
            if (active) break;
            active = fp.edge_to_node(h, e, i);
        }
        if (active) out.activate_node(h, i, 0);
    }
    for (EdgeId e = 0; e < h.edge_count(); ++e) {
        int active = 0;
        for (NodeId p : h.members(e)) active += fp.node_to_edge(h, p, e);
        if (active >= h.activation_count(e)) out.activate_edge(h, e, 0);
    }
    return out;
}

/// Activation-scale norm: total count of set messages over both directions.
inline double message_norm(const MessageState& state) {
    return static_cast<double>(state.ones());
}

/// Number of active hyperedges around node i, excluding e_gamma and e_beta.
inline int indicator_a(const Hypergraph& h, const MessageState& state, EdgeId e_beta, NodeId i,
                       EdgeId e_gamma) {
    if (e_beta == e_gamma) throw NotIncidentError("the two excluded hyperedges must differ");
    state.arcs().node_arc(h, i, e_beta);
    state.arcs().node_arc(h, i, e_gamma);
    int count = 0;
    for (EdgeId e : h.incident_edges(i)) {
        if (e == e_beta || e == e_gamma) continue;
        count += state.edge_to_node(h, e, i);
    }
    return count;
}

/// Number of active member messages into e_gamma, excluding nodes i and j.
inline int indicator_b(const Hypergraph& h, const MessageState& state, NodeId j, EdgeId e_gamma,
                       NodeId i) {
    if (i == j) throw SameNodeError("the two excluded nodes must differ");
    state.arcs().edge_arc(h, e_gamma, i);
    state.arcs().edge_arc(h, e_gamma, j);
    int count = 0;
    for (NodeId p : h.members(e_gamma)) {
        if (p == i || p == j) continue;
        count += state.node_to_edge(h, p, e_gamma);
    }
    return count;
}

/// Subcritical-node predicate: the (e_beta -> i -> e_gamma) hop transmits
/// iff no other incident hyperedge already activates i. The non-seed factor
/// is applied by callers.
inline bool indicator_m(const Hypergraph& h, const MessageState& state, EdgeId e_beta, NodeId i,
                        EdgeId e_gamma) {
    return indicator_a(h, state, e_beta, i, e_gamma) == 0;
}

/// Subcritical-hyperedge predicate: the (j -> e_gamma -> i) hop transmits
/// iff e_gamma sits exactly one activation short.
inline bool indicator_i(const Hypergraph& h, const MessageState& state, NodeId j, EdgeId e_gamma,
                        NodeId i) {
    return indicator_b(h, state, j, e_gamma, i) == h.activation_count(e_gamma) - 1;
}

/// Debug/oracle dump: one row per arc with its current value.
inline void write_messages_csv(std::ostream& out, const Hypergraph& h, const MessageState& state) {
    out << "kind,source,target,value\n";
    for (NodeId i = 0; i < h.node_count(); ++i)
        for (EdgeId e : h.incident_edges(i))
            out << "node_to_edge," << i << ',' << e << ',' << (state.node_to_edge(h, i, e) ? 1 : 0)
                << "\n";
    for (EdgeId e = 0; e < h.edge_count(); ++e)
        for (NodeId i : h.members(e))
            out << "edge_to_node," << e << ',' << i << ',' << (state.edge_to_node(h, e, i) ? 1 : 0)
                << "\n";
}

}  // namespace hyperinf

#endif  // HYPERINF_MESSAGE_PASSING_HPP
