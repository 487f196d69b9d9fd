#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "hyperinf/seed_selection.hpp"
#include "test_util.hpp"

using namespace hyperinf;
using namespace hyperinf::testing;

namespace {

std::vector<NodeLabel> seed_labels(const Hypergraph& h, const SelectionResult& r) {
    std::vector<NodeLabel> out;
    for (NodeId s : r.seeds) out.push_back(h.node_label(s));
    return out;
}

// Replays a result and checks the shared stop-rule contract.
void check_contract(const Hypergraph& h, const SelectionResult& r, const SelectionConfig& cfg) {
    CHECK((r.activation >= cfg.activation_target || r.exhausted));
    std::set<NodeId> unique(r.seeds.begin(), r.seeds.end());
    CHECK(unique.size() == r.seeds.size());
    double prev = -1.0;
    for (const auto& p : r.history) {
        CHECK(p.activation >= prev);
        prev = p.activation;
    }
    REQUIRE(r.history.size() == r.seeds.size());
    CHECK(r.seed_fraction ==
          Catch::Approx(static_cast<double>(r.seeds.size()) / h.node_count()));
}

}  // namespace

TEST_CASE("adaptive selection on the trace example graph") {
    Hypergraph h = fig1_graph();
    SelectionConfig cfg;
    cfg.activation_target = 0.9;

    SECTION("first-order adaptive run") {
        cfg.hci_order = 1;
        SelectionResult r = hci_tm_select(h, cfg);
        CHECK(seed_labels(h, r) == std::vector<NodeLabel>{2, 4});
        CHECK(r.activation == 1.0);
        CHECK(r.selection_scores == std::vector<double>{4.0, 2.0});
        check_contract(h, r, cfg);

        // initial table: 4 for the three interior nodes, 2 for leaves
        CascadeState empty(h);
        SeedVector none(h.node_count());
        HciTable t = hci_n(h, empty, none, 1);
        for (NodeLabel l : {2, 3, 6})
            CHECK(t.scores[static_cast<std::size_t>(h.find_label(l).value())] == 4);
        for (NodeLabel l : {1, 4, 5, 7})
            CHECK(t.scores[static_cast<std::size_t>(h.find_label(l).value())] == 2);
    }
    SECTION("second-order adaptive run") {
        // order 2 separates the interior nodes: node 3 reaches both leaves'
        // continuations (score 6) while 2 and 6 score 5
        cfg.hci_order = 2;
        SelectionResult r = hci_tm_select(h, cfg);
        CHECK(seed_labels(h, r) == std::vector<NodeLabel>{3, 4});
        CHECK(r.selection_scores == std::vector<double>{6.0, 2.0});
        CHECK(r.activation == 1.0);
    }
    SECTION("static and adaptive hyperdegree runs") {
        SelectionResult hhd = hhd_select(h, cfg);
        CHECK(seed_labels(h, hhd) == std::vector<NodeLabel>{2, 3, 6, 1, 4});
        CHECK(hhd.activation == 1.0);
        SelectionResult hhda = hhda_select(h, cfg);
        CHECK(seed_labels(h, hhda) == std::vector<NodeLabel>{2, 4});
        CHECK(hhda.activation == 1.0);
    }
}

TEST_CASE("exhaustive targets and isolated nodes") {
    SECTION("full activation forces the isolated node into the seeds") {
        Hypergraph h(4, {{0, 1}, {1, 2}}, 0.5);  // node 3 isolated
        SelectionConfig cfg;
        cfg.activation_target = 1.0;
        for (const auto& name : known_algorithms()) {
            SelectionResult r = run_selector(h, name, cfg);
            INFO(name);
            CHECK(std::find(r.seeds.begin(), r.seeds.end(), NodeId{3}) != r.seeds.end());
            CHECK(r.activation == 1.0);
        }
    }
    SECTION("tiny target stops after the first check") {
        Hypergraph h = fig1_graph();
        SelectionConfig cfg;
        cfg.activation_target = 1e-9;
        SelectionResult r = hhd_select(h, cfg);
        CHECK(r.seeds.size() == 1);
    }
    SECTION("empty hypergraph reports exhaustion") {
        Hypergraph h;
        SelectionConfig cfg;
        SelectionResult r = hhd_select(h, cfg);
        CHECK(r.exhausted);
        CHECK(r.seeds.empty());
    }
}

TEST_CASE("neighbor counts") {
    Hypergraph h = fig1_graph();
    std::vector<double> counts = neighbor_counts(h);
    auto at = [&](NodeLabel l) { return counts[static_cast<std::size_t>(h.find_label(l).value())]; };
    CHECK(at(2) == 2);
    CHECK(at(3) == 2);
    CHECK(at(6) == 2);
    for (NodeLabel l : {1, 4, 5, 7}) CHECK(at(l) == 1);

    SECTION("untouched node in one k-uniform edge sees K-1 neighbors") {
        Hypergraph k(6, {{0, 1, 2, 3}}, 0.5);
        CHECK(neighbor_counts(k)[0] == 3);
    }
}

TEST_CASE("adaptive selectors never seed active nodes") {
    std::mt19937_64 rng(808);
    SelectionConfig cfg;
    cfg.activation_target = 0.9;
    for (int trial = 0; trial < 30; ++trial) {
        Hypergraph h = random_hypergraph(rng, 60, 40, 5, 0.5);
        for (const auto& name : {"hcitm", "hhda", "npa"}) {
            SelectionResult r = run_selector(h, name, cfg);
            CascadeState replay(h);
            for (NodeId s : r.seeds) {
                INFO(name << " trial " << trial);
                REQUIRE_FALSE(replay.node_active(s));
                advance_cascade(h, replay, std::vector<NodeId>{s});
            }
        }
    }
}

TEST_CASE("pagerank scores") {
    SECTION("symmetric pair") {
        Hypergraph h = Hypergraph::from_edge_lists({{1, 2}}, 0.5);
        std::vector<double> pr = pagerank_scores(h, 0.85, 1e-10, 200);
        CHECK(pr[0] == Catch::Approx(0.5).margin(1e-9));
        CHECK(pr[1] == Catch::Approx(0.5).margin(1e-9));
    }
    SECTION("three-node path against the exact linear solve") {
        // c in {c,a} and {c,b}: PR(c) = 0.135/0.2775, PR(a) = PR(b)
        Hypergraph h = Hypergraph::from_edge_lists({{0, 1}, {0, 2}}, 0.5);
        std::vector<double> pr = pagerank_scores(h, 0.85, 1e-12, 200);
        CHECK(pr[0] == Catch::Approx(0.48648648648648651).epsilon(1e-6));
        CHECK(pr[1] == Catch::Approx(0.25675675675675674).epsilon(1e-6));
        CHECK(pr[2] == Catch::Approx(pr[1]).margin(1e-12));
    }
    SECTION("mass conservation with dangling nodes") {
        std::mt19937_64 rng(4242);
        for (int trial = 0; trial < 20; ++trial) {
            Hypergraph h = random_hypergraph(rng, 50, 20, 4, 0.5);  // isolated nodes likely
            std::vector<double> pr = pagerank_scores(h, 0.85, 1e-12, 200);
            double sum = std::accumulate(pr.begin(), pr.end(), 0.0);
            CHECK(sum == Catch::Approx(1.0).margin(1e-9));
            for (double v : pr) CHECK(v >= 0.0);
        }
    }
    SECTION("permutation equivariance") {
        Hypergraph h = Hypergraph::from_edge_lists({{0, 1, 2}, {2, 3}}, 0.5);
        Hypergraph permuted = Hypergraph::from_edge_lists({{3, 2, 1}, {1, 0}}, 0.5);
        // permutation: old 0->3, 1->2, 2->1, 3->0
        std::vector<double> a = pagerank_scores(h, 0.85, 1e-12, 200);
        std::vector<double> b = pagerank_scores(permuted, 0.85, 1e-12, 200);
        const int map[] = {3, 2, 1, 0};
        for (int i = 0; i < 4; ++i)
            CHECK(a[static_cast<std::size_t>(i)] ==
                  Catch::Approx(b[static_cast<std::size_t>(map[i])]).margin(1e-12));
    }
    SECTION("failure modes") {
        Hypergraph h = Hypergraph::from_edge_lists({{0, 1}, {0, 2}}, 0.5);
        CHECK_THROWS_AS(pagerank_scores(h, 1.5, 1e-10, 200), InvalidProbabilityError);
        CHECK_THROWS_AS(pagerank_scores(h, 0.85, 0.0, 1), NonConvergenceError);
    }
}

TEST_CASE("ranking selector behavior") {
    Hypergraph h = fig1_graph();
    SelectionConfig cfg;
    cfg.activation_target = 0.9;

    SECTION("pagerank ranking consumes in score order") {
        SelectionResult r = pagerank_select(h, cfg);
        check_contract(h, r, cfg);
        std::vector<double> pr = pagerank_scores(h, cfg.pagerank_damping, cfg.pagerank_tol,
                                                 cfg.pagerank_max_iter);
        for (std::size_t k = 1; k < r.seeds.size(); ++k)
            CHECK(pr[static_cast<std::size_t>(r.seeds[k - 1])] >=
                  pr[static_cast<std::size_t>(r.seeds[k])]);
    }
    SECTION("single-node graph") {
        Hypergraph one(1, {{0}}, 0.5);
        SelectionResult r = pagerank_select(one, cfg);
        CHECK(r.seeds == std::vector<NodeId>{0});
        CHECK(r.activation == 1.0);
    }
    SECTION("deterministic across reruns") {
        for (const auto& name : known_algorithms()) {
            SelectionConfig c;
            c.rng_seed = 99;
            SelectionResult a = run_selector(h, name, c);
            SelectionResult b = run_selector(h, name, c);
            INFO(name);
            CHECK(a.seeds == b.seeds);
            CHECK(a.activation == b.activation);
        }
    }
}

TEST_CASE("random baseline") {
    Hypergraph h = fig1_graph();
    SelectionConfig cfg;
    cfg.activation_target = 1.0;
    cfg.rng_seed = 31337;
    SelectionResult a = ra_select(h, cfg);
    SelectionResult b = ra_select(h, cfg);
    CHECK(a.seeds == b.seeds);
    CHECK(a.activation == 1.0);
    cfg.rng_seed = 31338;
    SelectionResult c = ra_select(h, cfg);
    CHECK((c.seeds != a.seeds || c.seeds.size() == a.seeds.size()));
}

TEST_CASE("adaptive hyperdegree never needs more seeds than static") {
    std::mt19937_64 rng(1212);
    SelectionConfig cfg;
    cfg.activation_target = 0.9;
    for (int trial = 0; trial < 100; ++trial) {
        Hypergraph h = random_hypergraph(rng, 50, 35, 5, 0.5);
        SelectionResult adaptive = hhda_select(h, cfg);
        SelectionResult fixed = hhd_select(h, cfg);
        INFO("trial " << trial);
        CHECK(adaptive.seeds.size() <= fixed.seeds.size());
    }
}

TEST_CASE("lazy table maintenance matches full recomputation") {
    // shadow run of the adaptive loop: after every round compare the stored
    // table against hci_n recomputed from scratch on the masked state
    std::mt19937_64 rng(3434);
    for (int trial = 0; trial < 4; ++trial) {
        Hypergraph h = random_hypergraph(rng, 200, 140, 5, trial % 2 ? 0.5 : 0.6);
        const int n = trial % 2 ? 1 : 2;
        CascadeState state(h);
        SeedVector committed(h.node_count());
        HciTable table = hci_n(h, state, committed, n);
        const int layers = (n + 1) / 2;
        for (int round = 0; round < 200; ++round) {
            NodeId best = -1;
            std::int64_t best_score = -1;
            for (NodeId i = 0; i < h.node_count(); ++i) {
                if (state.node_active(i)) continue;
                if (table.scores[static_cast<std::size_t>(i)] > best_score) {
                    best = i;
                    best_score = table.scores[static_cast<std::size_t>(i)];
                }
            }
            if (best < 0) break;
            committed.set(best, true);
            NewlyActivated newly;
            advance_cascade(h, state, std::vector<NodeId>{best}, &newly);
            for (NodeId v : bipartite_ball(h, newly.nodes, newly.edges, layers))
                table.scores[static_cast<std::size_t>(v)] =
                    state.node_active(v) ? 0 : hci_score(h, state, committed, v, n);
            HciTable full = hci_n(h, state, committed, n);
            INFO("trial " << trial << " round " << round);
            REQUIRE(table.scores == full.scores);
            if (state.activation_fraction() >= 0.9) break;
        }
    }
}

TEST_CASE("unknown algorithm names are rejected") {
    Hypergraph h = fig1_graph();
    CHECK_THROWS_AS(run_selector(h, "bogus", SelectionConfig{}), UsageError);
}
