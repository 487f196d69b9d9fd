#ifndef HYPERINF_SEED_SELECTION_HPP
#define HYPERINF_SEED_SELECTION_HPP

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <queue>
#include <random>
#include <string>
#include <vector>

#include "hyperinf/cascade.hpp"
#include "hyperinf/hci.hpp"
#include "hyperinf/hypergraph.hpp"

namespace hyperinf {

struct SelectionConfig {
    double activation_target = 0.9;  // a_r: stop once Q reaches this
    int hci_order = 2;
    std::uint64_t rng_seed = 0;
    int hci_depth_cap = kMaxHciOrder;
    double pagerank_damping = 0.85;
    double pagerank_tol = 1e-10;
    int pagerank_max_iter = 200;
};

struct QPoint {
    NodeId seed_count;
    double seed_fraction;
    double activation;
};

struct SelectionResult {
    std::string algorithm;
    std::vector<NodeId> seeds;
    /// Ranking score each seed had when it was selected (empty for ra).
    std::vector<double> selection_scores;
    double seed_fraction = 0.0;
    double activation = 0.0;
    std::vector<QPoint> history;
    /// Set when every node was consumed without reaching the target.
    bool exhausted = false;
    double elapsed_seconds = 0.0;
    CascadeState final_state;
};

namespace detail {

struct HeapEntry {
    std::int64_t score;
    NodeId node;
};
struct HeapLess {
    // max score first, then lowest node id
    bool operator()(const HeapEntry& a, const HeapEntry& b) const {
        if (a.score != b.score) return a.score < b.score;
        return a.node > b.node;
    }
};
using ScoreHeap = std::priority_queue<HeapEntry, std::vector<HeapEntry>, HeapLess>;

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

inline void record_pick(const Hypergraph& h, SelectionResult& r, CascadeState& state, NodeId pick,
                        double score, bool with_score) {
    r.seeds.push_back(pick);
    if (with_score) r.selection_scores.push_back(score);
    advance_cascade(h, state, std::vector<NodeId>{pick});
    r.history.push_back({static_cast<NodeId>(r.seeds.size()),
                         static_cast<double>(r.seeds.size()) /
                             static_cast<double>(std::max<NodeId>(h.node_count(), 1)),
                         state.activation_fraction()});
}

inline void finish(const Hypergraph& h, SelectionResult& r, CascadeState&& state,
                   const Stopwatch& watch) {
    r.activation = state.activation_fraction();
    r.seed_fraction = static_cast<double>(r.seeds.size()) /
                      static_cast<double>(std::max<NodeId>(h.node_count(), 1));
    r.final_state = std::move(state);
    r.elapsed_seconds = watch.seconds();
}

/// Consumes a precomputed ranking in order; already-active nodes are still
/// consumed (they were ranked before any propagation) and contribute nothing.
inline SelectionResult select_static(const Hypergraph& h, std::string name,
                                     const std::vector<double>& scores,
                                     const std::vector<NodeId>& order,
                                     const SelectionConfig& cfg, bool with_scores) {
    Stopwatch watch;
    SelectionResult r;
    r.algorithm = std::move(name);
    CascadeState state(h);
    bool reached = false;
    for (NodeId pick : order) {
        record_pick(h, r, state, pick,
                    with_scores ? scores[static_cast<std::size_t>(pick)] : 0.0, with_scores);
        if (state.activation_fraction() >= cfg.activation_target) {
            reached = true;
            break;
        }
    }
    r.exhausted = !reached;
    finish(h, r, std::move(state), watch);
    return r;
}

inline std::vector<NodeId> ranking_by_score(const std::vector<double>& scores) {
    std::vector<NodeId> order(scores.size());
    std::iota(order.begin(), order.end(), NodeId{0});
    std::stable_sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
        double sa = scores[static_cast<std::size_t>(a)];
        double sb = scores[static_cast<std::size_t>(b)];
        if (sa != sb) return sa > sb;
        return a < b;
    });
    return order;
}

/// Greedy loop over a masked score that never increases as the cascade
/// grows: a lazy max-heap revalidated on pop is exact. Never seeds an
/// already-active node.
inline SelectionResult select_adaptive(
    const Hypergraph& h, std::string name,
    const std::function<std::int64_t(const CascadeState&, NodeId)>& score_fn,
    const SelectionConfig& cfg) {
    Stopwatch watch;
    SelectionResult r;
    r.algorithm = std::move(name);
    CascadeState state(h);
    ScoreHeap heap;
    for (NodeId i = 0; i < h.node_count(); ++i) heap.push({score_fn(state, i), i});
    bool reached = false;
    while (!heap.empty() && !reached) {
        auto [score, node] = heap.top();
        heap.pop();
        if (state.node_active(node)) continue;
        std::int64_t current = score_fn(state, node);
        if (current != score) {
            heap.push({current, node});
            continue;
        }
        record_pick(h, r, state, node, static_cast<double>(score), true);
        reached = state.activation_fraction() >= cfg.activation_target;
    }
    r.exhausted = !reached;
    finish(h, r, std::move(state), watch);
    return r;
}

/// Distinct inactive co-members reachable through inactive hyperedges.
class MaskedNeighborCounter {
public:
    explicit MaskedNeighborCounter(const Hypergraph& h)
        : h_(h), stamp_(static_cast<std::size_t>(h.node_count()), 0) {}

    std::int64_t operator()(const CascadeState& state, NodeId i) {
        if (state.node_active(i)) return 0;
        ++generation_;
        std::int64_t count = 0;
        for (EdgeId e : h_.incident_edges(i)) {
            if (state.edge_active(e)) continue;
            for (NodeId j : h_.members(e)) {
                if (j == i || state.node_active(j)) continue;
                auto& mark = stamp_[static_cast<std::size_t>(j)];
                if (mark == generation_) continue;
                mark = generation_;
                ++count;
            }
        }
        return count;
    }

private:
    const Hypergraph& h_;
    std::vector<std::uint32_t> stamp_;
    std::uint32_t generation_ = 0;
};

}  // namespace detail

/// Number of distinct nodes sharing at least one hyperedge with i.
inline std::vector<double> neighbor_counts(const Hypergraph& h) {
    std::vector<double> counts(static_cast<std::size_t>(h.node_count()), 0.0);
    std::vector<std::uint32_t> stamp(static_cast<std::size_t>(h.node_count()), 0);
    std::uint32_t generation = 0;
    for (NodeId i = 0; i < h.node_count(); ++i) {
        ++generation;
        std::int64_t count = 0;
        for (EdgeId e : h.incident_edges(i)) {
            for (NodeId j : h.members(e)) {
                if (j == i) continue;
                auto& mark = stamp[static_cast<std::size_t>(j)];
                if (mark == generation) continue;
                mark = generation;
                ++count;
            }
        }
        counts[static_cast<std::size_t>(i)] = static_cast<double>(count);
    }
    return counts;
}

/// Hypergraph PageRank: PR(i) = d * sum_{j in neighbors(i)} PR(j)/L(j) +
/// (1-d)/N with L(j) = sum_{e in del j} (|e|-1). Nodes with L(j)=0 spread
/// their mass uniformly; the converged vector is normalized to sum 1.
inline std::vector<double> pagerank_scores(const Hypergraph& h, double damping, double tol,
                                           int max_iter) {
    if (!(damping > 0.0 && damping < 1.0))
        throw InvalidProbabilityError("damping factor must lie in (0,1)");
    const NodeId n = h.node_count();
    if (n == 0) return {};

    // flattened distinct-neighbor lists
    std::vector<std::int64_t> offset(static_cast<std::size_t>(n) + 1, 0);
    std::vector<NodeId> neighbors;
    {
        std::vector<std::uint32_t> stamp(static_cast<std::size_t>(n), 0);
        std::uint32_t generation = 0;
        for (NodeId i = 0; i < n; ++i) {
            ++generation;
            for (EdgeId e : h.incident_edges(i)) {
                for (NodeId j : h.members(e)) {
                    if (j == i) continue;
                    auto& mark = stamp[static_cast<std::size_t>(j)];
                    if (mark == generation) continue;
                    mark = generation;
                    neighbors.push_back(j);
                }
            }
            offset[static_cast<std::size_t>(i) + 1] =
                static_cast<std::int64_t>(neighbors.size());
        }
    }

    std::vector<double> mass_share(static_cast<std::size_t>(n), 0.0);
    std::vector<std::uint8_t> dangling(static_cast<std::size_t>(n), 0);
    for (NodeId j = 0; j < n; ++j) {
        std::int64_t l = 0;
        for (EdgeId e : h.incident_edges(j)) l += h.edge_size(e) - 1;
        if (l == 0)
            dangling[static_cast<std::size_t>(j)] = 1;
        else
            mass_share[static_cast<std::size_t>(j)] = 1.0 / static_cast<double>(l);
    }

    const double uniform = 1.0 / static_cast<double>(n);
    std::vector<double> pr(static_cast<std::size_t>(n), uniform);
    std::vector<double> next(static_cast<std::size_t>(n), 0.0);
    for (int iter = 0; iter < max_iter; ++iter) {
        double dangling_mass = 0.0;
        for (NodeId j = 0; j < n; ++j)
            if (dangling[static_cast<std::size_t>(j)]) dangling_mass += pr[static_cast<std::size_t>(j)];
        double base = (1.0 - damping) * uniform + damping * dangling_mass * uniform;
        double delta = 0.0;
        for (NodeId i = 0; i < n; ++i) {
            double acc = 0.0;
            for (std::int64_t k = offset[static_cast<std::size_t>(i)];
                 k < offset[static_cast<std::size_t>(i) + 1]; ++k) {
                NodeId j = neighbors[static_cast<std::size_t>(k)];
                acc += pr[static_cast<std::size_t>(j)] * mass_share[static_cast<std::size_t>(j)];
            }
            double value = damping * acc + base;
            next[static_cast<std::size_t>(i)] = value;
            delta = std::max(delta, std::abs(value - pr[static_cast<std::size_t>(i)]));
        }
        pr.swap(next);
        if (delta < tol) {
            double sum = std::accumulate(pr.begin(), pr.end(), 0.0);
            for (double& v : pr) v /= sum;
            return pr;
        }
    }
    throw NonConvergenceError("pagerank did not converge within the iteration limit");
}

/// Called after every HCI-TM round with the selector's internal score table
/// and masked state; lets tests compare lazy maintenance against a full
/// recomputation.
using HciTmObserver =
    std::function<void(const HciTable&, const CascadeState&, const SeedVector&)>;

/// HCI-TM: repeatedly seed the inactive node with the highest HCI_n, cascade,
/// mask the newly activated structure, and recompute HCI_n only inside the
/// ceil(n/2)-layer neighborhood of what was just masked.
inline SelectionResult hci_tm_select(const Hypergraph& h, const SelectionConfig& cfg,
                                     const HciTmObserver& after_round = {}) {
    detail::Stopwatch watch;
    const int n = cfg.hci_order;
    SelectionResult r;
    r.algorithm = "hcitm";
    CascadeState state(h);
    SeedVector committed(h.node_count());

    HciTable table = hci_n(h, state, committed, n, cfg.hci_depth_cap);
    detail::ScoreHeap heap;
    for (NodeId i = 0; i < h.node_count(); ++i)
        heap.push({table.scores[static_cast<std::size_t>(i)], i});

    const int layers = (n + 1) / 2;
    BallWorkspace workspace;
    std::vector<NodeId> ball;
    bool reached = false;
    while (!heap.empty() && !reached) {
        auto [score, node] = heap.top();
        heap.pop();
        if (state.node_active(node)) continue;
        if (score != table.scores[static_cast<std::size_t>(node)]) continue;

        r.seeds.push_back(node);
        r.selection_scores.push_back(static_cast<double>(score));
        committed.set(node, true);
        NewlyActivated newly;
        advance_cascade(h, state, std::vector<NodeId>{node}, &newly);
        r.history.push_back({static_cast<NodeId>(r.seeds.size()),
                             static_cast<double>(r.seeds.size()) /
                                 static_cast<double>(std::max<NodeId>(h.node_count(), 1)),
                             state.activation_fraction()});
        reached = state.activation_fraction() >= cfg.activation_target;

        if (!reached || after_round) {
            workspace.visit(h, newly.nodes, newly.edges, layers, ball);
            for (NodeId v : ball) {
                std::int64_t fresh = state.node_active(v)
                                         ? 0
                                         : hci_score(h, state, committed, v, n, cfg.hci_depth_cap);
                table.scores[static_cast<std::size_t>(v)] = fresh;
                if (!state.node_active(v)) heap.push({fresh, v});
            }
        }
        if (after_round) after_round(table, state, committed);
    }
    r.exhausted = !reached;
    detail::finish(h, r, std::move(state), watch);
    return r;
}

/// High-hyperdegree ranking, static: ranked once, consumed in rank order.
inline SelectionResult hhd_select(const Hypergraph& h, const SelectionConfig& cfg) {
    std::vector<double> scores(static_cast<std::size_t>(h.node_count()));
    for (NodeId i = 0; i < h.node_count(); ++i)
        scores[static_cast<std::size_t>(i)] = h.hyperdegree(i);
    return detail::select_static(h, "hhd", scores, detail::ranking_by_score(scores), cfg, true);
}

/// Adaptive high hyperdegree: masked hyperdegree, never seeds active nodes.
inline SelectionResult hhda_select(const Hypergraph& h, const SelectionConfig& cfg) {
    SelectionResult r = detail::select_adaptive(
        h, "hhda",
        [&h](const CascadeState& s, NodeId i) -> std::int64_t {
            return s.node_active(i) ? 0 : masked_hyperdegree(h, s, i);
        },
        cfg);
    return r;
}

/// Neighbor-preference ranking, static.
inline SelectionResult np_select(const Hypergraph& h, const SelectionConfig& cfg) {
    std::vector<double> scores = neighbor_counts(h);
    return detail::select_static(h, "np", scores, detail::ranking_by_score(scores), cfg, true);
}

/// Adaptive neighbor preference on the masked hypergraph.
inline SelectionResult npa_select(const Hypergraph& h, const SelectionConfig& cfg) {
    detail::MaskedNeighborCounter counter(h);
    return detail::select_adaptive(
        h, "npa",
        [&counter](const CascadeState& s, NodeId i) -> std::int64_t { return counter(s, i); },
        cfg);
}

/// Static ranking by hypergraph PageRank.
inline SelectionResult pagerank_select(const Hypergraph& h, const SelectionConfig& cfg) {
    std::vector<double> scores =
        pagerank_scores(h, cfg.pagerank_damping, cfg.pagerank_tol, cfg.pagerank_max_iter);
    return detail::select_static(h, "pr", scores, detail::ranking_by_score(scores), cfg, true);
}

/// Uniform random order from cfg.rng_seed, consumed like a static ranking.
inline SelectionResult ra_select(const Hypergraph& h, const SelectionConfig& cfg) {
    std::vector<NodeId> order(static_cast<std::size_t>(h.node_count()));
    std::iota(order.begin(), order.end(), NodeId{0});
    std::mt19937_64 rng(cfg.rng_seed);
    std::shuffle(order.begin(), order.end(), rng);
    return detail::select_static(h, "ra", {}, order, cfg, false);
}

inline const std::vector<std::string>& known_algorithms() {
    static const std::vector<std::string> names{"hcitm", "hhd", "hhda", "np",
                                                "npa",   "pr",  "ra"};
    return names;
}

inline SelectionResult run_selector(const Hypergraph& h, const std::string& algorithm,
                                    const SelectionConfig& cfg) {
    if (algorithm == "hcitm") return hci_tm_select(h, cfg);
    if (algorithm == "hhd") return hhd_select(h, cfg);
    if (algorithm == "hhda") return hhda_select(h, cfg);
    if (algorithm == "np") return np_select(h, cfg);
    if (algorithm == "npa") return npa_select(h, cfg);
    if (algorithm == "pr") return pagerank_select(h, cfg);
    if (algorithm == "ra") return ra_select(h, cfg);
    throw UsageError("unknown algorithm '" + algorithm + "'");
}

}  // namespace hyperinf

#endif  // HYPERINF_SEED_SELECTION_HPP
