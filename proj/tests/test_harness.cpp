#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "hyperinf/experiment.hpp"
#include "test_util.hpp"

using namespace hyperinf;
using namespace hyperinf::testing;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& path) {
    std::ifstream in(path);
    REQUIRE(in);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

fs::path fresh_dir(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / "hyperinf_tests" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

fs::path write_fig1_file(const fs::path& dir) {
    fs::path file = dir / "fig1.hg";
    std::ofstream out(file);
    out << "%threshold 0.5\n1 2\n2 3\n3 6\n4 5\n6 7\n";
    return file;
}

nlohmann::json without_volatile(nlohmann::json j) {
    j.erase("elapsed_ms");
    j.erase("timestamp");
    return j;
}

}  // namespace

TEST_CASE("seed splitting") {
    std::set<std::uint64_t> seen;
    for (std::uint64_t stream = 0; stream < 1000; ++stream)
        seen.insert(derived_seed(42, stream));
    CHECK(seen.size() == 1000);
    CHECK(derived_seed(42, 7) == derived_seed(42, 7));
    CHECK(derived_seed(42, 7) != derived_seed(43, 7));
}

TEST_CASE("generate command") {
    fs::path dir = fresh_dir("generate");
    GeneratorSpec spec{GeneratorKind::erdos_renyi, 500, 150, 3.0, 0.5, 99};
    std::string base = (dir / "er").string();
    GeneratedHypergraph g = cmd_generate(spec, base);

    SECTION("files exist and the sidecar echoes the spec") {
        REQUIRE(fs::exists(base + ".hg"));
        REQUIRE(fs::exists(base + ".json"));
        nlohmann::json sidecar = nlohmann::json::parse(slurp(base + ".json"));
        CHECK(sidecar["spec"]["kind"] == "er");
        CHECK(sidecar["spec"]["rng_seed"] == 99);
        CHECK(sidecar["realized_edges"] == g.graph.edge_count());
        CHECK(sidecar["realized_nodes"] == 500);
    }
    SECTION("reload round-trips the incidence structure") {
        std::ifstream in(base + ".hg");
        Hypergraph back = load_hyperedge_list(in);
        REQUIRE(back.edge_count() == g.graph.edge_count());
        for (EdgeId e = 0; e < back.edge_count(); ++e) {
            std::vector<NodeLabel> want, got;
            for (NodeId v : g.graph.members(e)) want.push_back(g.graph.node_label(v));
            for (NodeId v : back.members(e)) got.push_back(back.node_label(v));
            std::sort(want.begin(), want.end());
            std::sort(got.begin(), got.end());
            REQUIRE(want == got);
        }
    }
    SECTION("reruns are byte-identical") {
        std::string again = (dir / "er_again").string();
        cmd_generate(spec, again);
        CHECK(slurp(base + ".hg") == slurp(again + ".hg"));
        nlohmann::json a = nlohmann::json::parse(slurp(base + ".json"));
        nlohmann::json b = nlohmann::json::parse(slurp(again + ".json"));
        CHECK(a == b);
    }
}

TEST_CASE("select command") {
    fs::path dir = fresh_dir("select");
    fs::path fig1 = write_fig1_file(dir);

    SECTION("whole-graph seed counts on the worked example") {
        SelectOptions opt;
        opt.input.path = fig1.string();
        opt.input.giant_component = false;
        opt.algorithms = {"hcitm", "hhd", "hhda"};
        opt.config.activation_target = 0.9;
        opt.config.hci_order = 1;
        opt.output_dir = (dir / "out").string();
        auto records = cmd_select(opt);
        REQUIRE(records.size() == 3);
        CHECK(records[0].result.seeds.size() == 2);
        CHECK(records[1].result.seeds.size() == 5);
        CHECK(records[2].result.seeds.size() == 2);
        CHECK(records[0].record["seeds"] == nlohmann::json({2, 4}));
        REQUIRE(fs::exists(dir / "out" / "hcitm_rep0.json"));
        REQUIRE(fs::exists(dir / "out" / "hcitm_rep0_qhistory.csv"));
    }
    SECTION("giant-component extraction trims the detached pair") {
        SelectOptions opt;
        opt.input.path = fig1.string();
        opt.algorithms = {"hhda"};
        opt.config.activation_target = 0.9;
        auto records = cmd_select(opt);
        CHECK(records[0].record["realized_nodes"] == 5);
        CHECK(records[0].record["source_nodes"] == 7);
        CHECK(records[0].result.seeds.size() == 1);
    }
    SECTION("unknown algorithms are usage errors") {
        SelectOptions opt;
        opt.input.path = fig1.string();
        opt.algorithms = {"bogus"};
        CHECK_THROWS_AS(cmd_select(opt), UsageError);
    }
    SECTION("repetitions draw distinct derived streams") {
        SelectOptions opt;
        opt.input.generator = GeneratorSpec{GeneratorKind::erdos_renyi, 300, 90, 3.0, 0.5, 0};
        opt.algorithms = {"ra"};
        opt.repetitions = 10;
        opt.master_seed = 5;
        auto records = cmd_select(opt);
        REQUIRE(records.size() == 10);
        std::set<std::uint64_t> instance_seeds, selection_seeds;
        for (const auto& r : records) {
            instance_seeds.insert(
                r.record["input"]["generator"]["rng_seed"].get<std::uint64_t>());
            selection_seeds.insert(r.record["rng_seed"].get<std::uint64_t>());
        }
        CHECK(instance_seeds.size() == 10);
        CHECK(selection_seeds.size() == 10);
        for (const auto& r : records)
            CHECK(r.record["master_seed"] == 5);
    }
    SECTION("reruns reproduce everything but the timing fields") {
        SelectOptions opt;
        opt.input.generator = GeneratorSpec{GeneratorKind::scale_free, 400, 200, 1.5, 0.5, 0};
        opt.algorithms = {"hcitm", "ra"};
        opt.repetitions = 2;
        opt.master_seed = 11;
        opt.output_dir = (dir / "rerun_a").string();
        cmd_select(opt);
        opt.output_dir = (dir / "rerun_b").string();
        cmd_select(opt);
        for (const auto& entry : fs::directory_iterator(dir / "rerun_a")) {
            fs::path other = dir / "rerun_b" / entry.path().filename();
            REQUIRE(fs::exists(other));
            if (entry.path().extension() == ".json") {
                CHECK(without_volatile(nlohmann::json::parse(slurp(entry.path()))) ==
                      without_volatile(nlohmann::json::parse(slurp(other))));
            } else {
                CHECK(slurp(entry.path()) == slurp(other));
            }
        }
    }
}

TEST_CASE("curve command") {
    fs::path dir = fresh_dir("curve");
    fs::path fig1 = write_fig1_file(dir);
    InputSpec input;
    input.path = fig1.string();
    input.giant_component = false;
    SelectionConfig cfg;
    cfg.activation_target = 0.9;
    cfg.hci_order = 1;

    auto history = cmd_curve(input, "hcitm", cfg, 0, (dir / "out").string());
    REQUIRE(history.size() == 2);
    CHECK(history[0].seed_count == 1);
    CHECK(history[0].seed_fraction == Catch::Approx(1.0 / 7.0));
    CHECK(history[0].activation == Catch::Approx(5.0 / 7.0));
    CHECK(history[1].seed_count == 2);
    CHECK(history[1].activation == 1.0);

    SECTION("activation column never decreases and stops at the target") {
        for (std::size_t k = 1; k < history.size(); ++k)
            CHECK(history[k].activation >= history[k - 1].activation);
        for (std::size_t k = 0; k + 1 < history.size(); ++k)
            CHECK(history[k].activation < cfg.activation_target);
        CHECK(history.back().activation >= cfg.activation_target);
    }
    SECTION("csv carries the audit header") {
        std::string text = slurp(dir / "out" / "curve_hcitm.csv");
        CHECK(text.find("# master_seed 0") != std::string::npos);
        CHECK(text.find("seed_count,q,Q\n") != std::string::npos);
        CHECK(text.find("1,0.14285714285714285,0.7142857142857143") != std::string::npos);
    }
}

TEST_CASE("hci trace command") {
    fs::path dir = fresh_dir("trace");
    fs::path fig1 = write_fig1_file(dir);
    InputSpec input;
    input.path = fig1.string();
    input.giant_component = false;
    SelectionConfig cfg;
    cfg.activation_target = 0.9;

    auto rows = cmd_trace_hci(input, cfg, 0, (dir / "out").string());
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].hci_order == 1);
    CHECK(rows[0].activation_index == 1);
    CHECK(rows[0].node == 2);
    CHECK(rows[0].hci == 4);
    CHECK(rows[1].node == 4);
    CHECK(rows[1].hci == 2);
    CHECK(rows[2].hci_order == 2);
    CHECK(rows[2].node == 3);
    CHECK(rows[2].hci == 6);
    CHECK(slurp(dir / "out" / "trace_hci.csv")
              .find("hci_order,activation_index,node,hci\n") != std::string::npos);
}

TEST_CASE("slope fitting") {
    CHECK(fit_slope({{1, 2}, {2, 4}, {3, 6}}) == Catch::Approx(2.0));
    CHECK(fit_slope({{0, 1}, {1, 1}, {2, 1}}) == Catch::Approx(0.0).margin(1e-12));
    CHECK_THROWS_AS(fit_slope({{1, 1}}), UsageError);
}

TEST_CASE("bench command") {
    fs::path dir = fresh_dir("bench");
    BenchOptions opt;
    opt.base = GeneratorSpec{GeneratorKind::erdos_renyi, 0, 0, 3.0, 0.5, 0};
    opt.sizes = {200, 400, 800};
    opt.edge_ratio = 0.3;
    opt.algorithms = {"hhda", "dummy"};
    opt.config.activation_target = 0.9;
    opt.master_seed = 21;
    opt.output_dir = (dir / "out").string();

    BenchReport report = cmd_bench(opt);
    REQUIRE(report.rows.size() == 6);
    REQUIRE(report.slopes.count("hhda") == 1);
    REQUIRE(report.slopes.count("dummy") == 1);

    SECTION("non-timing columns reproduce across reruns") {
        opt.output_dir = (dir / "out2").string();
        BenchReport again = cmd_bench(opt);
        REQUIRE(again.rows.size() == report.rows.size());
        for (std::size_t k = 0; k < report.rows.size(); ++k) {
            CHECK(report.rows[k].algorithm == again.rows[k].algorithm);
            CHECK(report.rows[k].nodes == again.rows[k].nodes);
            CHECK(report.rows[k].realized_nodes == again.rows[k].realized_nodes);
            CHECK(report.rows[k].repetition == again.rows[k].repetition);
        }
    }
    SECTION("outputs exist") {
        CHECK(fs::exists(dir / "out" / "bench.csv"));
        CHECK(fs::exists(dir / "out" / "bench_summary.json"));
    }
    SECTION("too few sizes rejected") {
        opt.sizes = {100, 200};
        CHECK_THROWS_AS(cmd_bench(opt), UsageError);
    }
}

TEST_CASE("input resolution") {
    SECTION("threshold override reaches the loader") {
        fs::path dir = fresh_dir("resolve");
        fs::path fig1 = write_fig1_file(dir);
        InputSpec spec;
        spec.path = fig1.string();
        spec.threshold_override = 0.8;
        spec.giant_component = false;
        ResolvedInput in = resolve_input(spec, 0);
        CHECK(in.graph.threshold(0) == 0.8);
    }
    SECTION("missing input is a usage error") {
        CHECK_THROWS_AS(resolve_input(InputSpec{}, 0), UsageError);
    }
    SECTION("file and generator together are rejected") {
        InputSpec spec;
        spec.path = "x";
        spec.generator = GeneratorSpec{};
        CHECK_THROWS_AS(resolve_input(spec, 0), UsageError);
    }
}
