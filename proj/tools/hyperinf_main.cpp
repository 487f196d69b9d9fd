// Command-line front end: generate synthetic hypergraphs, run seed-selection
// experiments, and export the CSV/JSON artifacts.

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hyperinf/experiment.hpp"

namespace {

using namespace hyperinf;

struct CommonInput {
    std::string input_file;
    std::string kind = "er";
    std::int32_t nodes = 0;
    std::int32_t edges = 0;
    double param = 3.0;
    double threshold = 0.5;
    bool threshold_given = false;
    bool whole_graph = false;
};

EdgeId default_edge_count(GeneratorKind kind, NodeId nodes) {
    // experiment-facing ratios: M = 0.3N for er, 0.5N for sf and kuf
    double ratio = kind == GeneratorKind::erdos_renyi ? 0.3 : 0.5;
    return std::max<EdgeId>(1, static_cast<EdgeId>(ratio * static_cast<double>(nodes)));
}

GeneratorSpec generator_from(const CommonInput& in) {
    GeneratorSpec spec;
    spec.kind = generator_kind_from_string(in.kind);
    spec.nodes = in.nodes;
    spec.edges = in.edges > 0 ? in.edges : default_edge_count(spec.kind, in.nodes);
    spec.param = in.param;
    spec.threshold = in.threshold;
    return spec;
}

InputSpec input_from(const CommonInput& in) {
    InputSpec spec;
    if (!in.input_file.empty()) {
        spec.path = in.input_file;
        if (in.threshold_given) spec.threshold_override = in.threshold;
    } else {
        if (in.nodes <= 0) throw UsageError("give --input or a generator via --nodes");
        spec.generator = generator_from(in);
    }
    spec.giant_component = !in.whole_graph;
    return spec;
}

void add_input_options(CLI::App* cmd, CommonInput& in) {
    cmd->add_option("--input", in.input_file, "Hyperedge-list file to load");
    cmd->add_option("--kind", in.kind, "Generator kind: er, sf, or kuf")
        ->check(CLI::IsMember({"er", "sf", "kuf"}));
    cmd->add_option("--nodes", in.nodes, "Generator node count");
    cmd->add_option("--edges", in.edges, "Generator hyperedge count (default 0.3N er, 0.5N sf/kuf)");
    cmd->add_option("--param", in.param,
                    "Mean hyperdegree (er), power-law exponent (sf), or edge size (kuf)");
    cmd->add_option("--threshold", in.threshold,
                    "Hyperedge threshold; overrides a file's %threshold directive")
        ->each([&in](const std::string&) { in.threshold_given = true; });
    cmd->add_flag("--no-giant-component", in.whole_graph,
                  "Run on the whole input instead of its giant component");
}

void add_selection_options(CLI::App* cmd, SelectionConfig& cfg, std::uint64_t& master_seed) {
    cmd->add_option("--target", cfg.activation_target, "Stop once Q reaches this fraction")
        ->check(CLI::Range(1e-12, 1.0));
    cmd->add_option("--hci-order", cfg.hci_order, "HCI order n for hcitm");
    cmd->add_option("--damping", cfg.pagerank_damping, "PageRank damping factor");
    cmd->add_option("--seed", master_seed, "Master RNG seed");
}

std::vector<std::string> split_list(const std::string& csv) {
    std::vector<std::string> out;
    std::string token;
    std::istringstream in(csv);
    while (std::getline(in, token, ','))
        if (!token.empty()) out.push_back(token);
    return out;
}

int run(int argc, char** argv) {
    CLI::App app{"Threshold-model influence maximization on hypergraphs"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Read options from an INI/TOML config file");

    // generate
    auto* generate_cmd = app.add_subcommand("generate", "Write a synthetic hypergraph");
    CommonInput gen_in;
    std::uint64_t gen_seed = 0;
    std::string gen_out = "hypergraph";
    generate_cmd->add_option("--kind", gen_in.kind, "Generator kind: er, sf, or kuf")
        ->check(CLI::IsMember({"er", "sf", "kuf"}));
    generate_cmd->add_option("--nodes", gen_in.nodes, "Node count")->required();
    generate_cmd->add_option("--edges", gen_in.edges, "Hyperedge count (default by kind)");
    generate_cmd->add_option("--param", gen_in.param, "Generator parameter");
    generate_cmd->add_option("--threshold", gen_in.threshold, "Uniform hyperedge threshold");
    generate_cmd->add_option("--seed", gen_seed, "RNG seed");
    generate_cmd->add_option("--out", gen_out, "Output base path (.hg and .json)");

    // select
    auto* select_cmd = app.add_subcommand("select", "Run seed-selection algorithms");
    CommonInput select_in;
    SelectOptions select_opt;
    std::string select_algorithms = "hcitm";
    add_input_options(select_cmd, select_in);
    add_selection_options(select_cmd, select_opt.config, select_opt.master_seed);
    select_cmd->add_option("--algorithms", select_algorithms,
                           "Comma-separated: hcitm,hhd,hhda,np,npa,pr,ra");
    select_cmd->add_option("--reps", select_opt.repetitions, "Repetitions");
    select_cmd->add_option("--out", select_opt.output_dir, "Output directory");

    // curve
    auto* curve_cmd = app.add_subcommand("curve", "Emit the Q(q) activation curve");
    CommonInput curve_in;
    SelectionConfig curve_cfg;
    std::uint64_t curve_seed = 0;
    std::string curve_algorithm = "hcitm";
    std::string curve_out;
    add_input_options(curve_cmd, curve_in);
    add_selection_options(curve_cmd, curve_cfg, curve_seed);
    curve_cmd->add_option("--algorithm", curve_algorithm, "Selector to trace");
    curve_cmd->add_option("--out", curve_out, "Output directory");

    // trace-hci
    auto* trace_cmd = app.add_subcommand("trace-hci", "HCI value of each seed at selection time");
    CommonInput trace_in;
    SelectionConfig trace_cfg;
    std::uint64_t trace_seed = 0;
    std::string trace_out;
    add_input_options(trace_cmd, trace_in);
    add_selection_options(trace_cmd, trace_cfg, trace_seed);
    trace_cmd->add_option("--out", trace_out, "Output directory");

    // bench
    auto* bench_cmd = app.add_subcommand("bench", "Time selectors over a size sweep");
    BenchOptions bench_opt;
    std::string bench_kind = "er";
    std::string bench_sizes = "5000,10000,20000,50000";
    std::string bench_algorithms = "hcitm";
    double bench_param = 3.0;
    double bench_threshold = 0.5;
    double bench_ratio = -1.0;
    bench_cmd->add_option("--kind", bench_kind, "Generator kind")
        ->check(CLI::IsMember({"er", "sf", "kuf"}));
    bench_cmd->add_option("--sizes", bench_sizes, "Comma-separated node counts (>= 3)");
    bench_cmd->add_option("--param", bench_param, "Generator parameter");
    bench_cmd->add_option("--threshold", bench_threshold, "Hyperedge threshold");
    bench_cmd->add_option("--edge-ratio", bench_ratio, "M/N ratio (default by kind)");
    bench_cmd->add_option("--algorithms", bench_algorithms,
                          "Comma-separated selectors; 'dummy' is a constant-work control");
    bench_cmd->add_option("--reps", bench_opt.repetitions, "Repetitions per size");
    add_selection_options(bench_cmd, bench_opt.config, bench_opt.master_seed);
    bench_cmd->add_option("--out", bench_opt.output_dir, "Output directory");

    CLI11_PARSE(app, argc, argv);

    if (generate_cmd->parsed()) {
        GeneratorSpec spec = generator_from(gen_in);
        spec.rng_seed = gen_seed;
        GeneratedHypergraph g = cmd_generate(spec, gen_out);
        std::cout << "wrote " << gen_out << ".hg: " << g.graph.node_count() << " nodes, "
                  << g.graph.edge_count() << " hyperedges (" << g.dropped_edges
                  << " dropped)\n";
    } else if (select_cmd->parsed()) {
        select_opt.input = input_from(select_in);
        select_opt.algorithms = split_list(select_algorithms);
        auto records = cmd_select(select_opt);
        for (const auto& r : records)
            std::cout << r.algorithm << " rep=" << r.repetition
                      << " seeds=" << r.result.seeds.size()
                      << " q=" << format_double(r.result.seed_fraction)
                      << " Q=" << format_double(r.result.activation)
                      << (r.result.exhausted ? " (exhausted)" : "") << "\n";
    } else if (curve_cmd->parsed()) {
        auto history = cmd_curve(input_from(curve_in), curve_algorithm, curve_cfg, curve_seed,
                                 curve_out);
        std::cout << "seed_count,q,Q\n";
        for (const auto& p : history)
            std::cout << p.seed_count << ',' << format_double(p.seed_fraction) << ','
                      << format_double(p.activation) << "\n";
    } else if (trace_cmd->parsed()) {
        auto rows = cmd_trace_hci(input_from(trace_in), trace_cfg, trace_seed, trace_out);
        std::cout << "hci_order,activation_index,node,hci\n";
        for (const auto& row : rows)
            std::cout << row.hci_order << ',' << row.activation_index << ',' << row.node << ','
                      << row.hci << "\n";
    } else if (bench_cmd->parsed()) {
        bench_opt.base.kind = generator_kind_from_string(bench_kind);
        bench_opt.base.param = bench_param;
        bench_opt.base.threshold = bench_threshold;
        bench_opt.edge_ratio = bench_ratio > 0
                                   ? bench_ratio
                                   : (bench_opt.base.kind == GeneratorKind::erdos_renyi ? 0.3
                                                                                        : 0.5);
        for (const auto& s : split_list(bench_sizes))
            bench_opt.sizes.push_back(static_cast<NodeId>(std::stol(s)));
        bench_opt.algorithms = split_list(bench_algorithms);
        BenchReport report = cmd_bench(bench_opt);
        for (const auto& [name, slope] : report.slopes)
            std::cout << name << " slope " << format_double(slope) << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const hyperinf::Error& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
}
