#ifndef HYPERINF_EXPERIMENT_HPP
#define HYPERINF_EXPERIMENT_HPP

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hyperinf/cascade.hpp"
#include "hyperinf/generators.hpp"
#include "hyperinf/hci.hpp"
#include "hyperinf/hypergraph.hpp"
#include "hyperinf/hypergraph_io.hpp"
#include "hyperinf/seed_selection.hpp"

namespace hyperinf {

/// Splits one master seed into independent streams (splitmix64 finalizer over
/// master + (stream+1) * golden gamma). Stream numbering per command is
/// documented at each call site; there is no other source of randomness.
inline std::uint64_t derived_seed(std::uint64_t master, std::uint64_t stream) {
    std::uint64_t z = master + (stream + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Shortest round-trip decimal form, stable across reruns.
inline std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string utc_timestamp() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

inline nlohmann::json to_json(const GeneratorSpec& spec) {
    return {{"kind", to_string(spec.kind)}, {"nodes", spec.nodes},
            {"edges", spec.edges},          {"param", spec.param},
            {"threshold", spec.threshold},  {"rng_seed", spec.rng_seed}};
}

inline nlohmann::json to_json(const SelectionConfig& cfg) {
    return {{"activation_target", cfg.activation_target},
            {"hci_order", cfg.hci_order},
            {"rng_seed", cfg.rng_seed},
            {"hci_depth_cap", cfg.hci_depth_cap},
            {"pagerank_damping", cfg.pagerank_damping},
            {"pagerank_tol", cfg.pagerank_tol},
            {"pagerank_max_iter", cfg.pagerank_max_iter}};
}

/// Where a command's hypergraph comes from: a file or a generator spec.
struct InputSpec {
    std::optional<std::string> path;
    std::optional<GeneratorSpec> generator;
    std::optional<double> threshold_override;
    bool giant_component = true;
};

struct ResolvedInput {
    Hypergraph graph;          // after optional giant-component extraction
    NodeId source_nodes = 0;   // before extraction
    EdgeId source_edges = 0;
    nlohmann::json echo;
};

/// Loads or generates the input hypergraph; generator inputs get
/// instance_seed as their rng seed.
inline ResolvedInput resolve_input(const InputSpec& spec, std::uint64_t instance_seed) {
    ResolvedInput out;
    Hypergraph whole;
    if (spec.path && spec.generator) throw UsageError("give either an input file or a generator");
    if (spec.path) {
        std::ifstream in(*spec.path);
        if (!in) throw IoError("cannot open input file '" + *spec.path + "'");
        whole = load_hyperedge_list(in, spec.threshold_override);
        out.echo["file"] = *spec.path;
        if (spec.threshold_override) out.echo["threshold_override"] = *spec.threshold_override;
    } else if (spec.generator) {
        GeneratorSpec gspec = *spec.generator;
        gspec.rng_seed = instance_seed;
        GeneratedHypergraph gen = generate(gspec);
        whole = std::move(gen.graph);
        out.echo["generator"] = to_json(gspec);
        out.echo["dropped_edges"] = gen.dropped_edges;
    } else {
        throw UsageError("no input given");
    }
    out.source_nodes = whole.node_count();
    out.source_edges = whole.edge_count();
    out.echo["giant_component"] = spec.giant_component;
    if (spec.giant_component)
        out.graph = giant_component(whole).graph;
    else
        out.graph = std::move(whole);
    return out;
}

struct RunRecord {
    std::string algorithm;
    int repetition = 0;
    SelectionResult result;
    nlohmann::json record;
};

namespace detail {

inline void write_audit_header(std::ostream& out, const nlohmann::json& echo,
                               std::uint64_t master_seed, const SelectionConfig& cfg) {
    out << "# master_seed " << master_seed << "\n";
    out << "# input " << echo.dump() << "\n";
    out << "# config " << to_json(cfg).dump() << "\n";
}

inline void write_history_csv(std::ostream& out, const std::vector<QPoint>& history) {
    out << "seed_count,q,Q\n";
    for (const auto& p : history)
        out << p.seed_count << ',' << format_double(p.seed_fraction) << ','
            << format_double(p.activation) << "\n";
}

inline nlohmann::json seeds_as_labels(const Hypergraph& h, const std::vector<NodeId>& seeds) {
    nlohmann::json arr = nlohmann::json::array();
    for (NodeId s : seeds) arr.push_back(h.node_label(s));
    return arr;
}

inline nlohmann::json make_record(const Hypergraph& h, const ResolvedInput& input,
                                  const SelectionResult& result, const SelectionConfig& cfg,
                                  std::uint64_t master_seed, int repetition) {
    nlohmann::json history = nlohmann::json::array();
    for (const auto& p : result.history)
        history.push_back({p.seed_count, p.seed_fraction, p.activation});
    nlohmann::json rec{{"algorithm", result.algorithm},
                       {"config", to_json(cfg)},
                       {"rng_seed", cfg.rng_seed},
                       {"master_seed", master_seed},
                       {"repetition", repetition},
                       {"input", input.echo},
                       {"source_nodes", input.source_nodes},
                       {"source_edges", input.source_edges},
                       {"realized_nodes", h.node_count()},
                       {"realized_edges", h.edge_count()},
                       {"seeds", seeds_as_labels(h, result.seeds)},
                       {"q", result.seed_fraction},
                       {"Q", result.activation},
                       {"Q_history", history},
                       {"exhausted", result.exhausted},
                       {"elapsed_ms", result.elapsed_seconds * 1000.0},
                       {"timestamp", utc_timestamp()}};
    if (!result.selection_scores.empty()) rec["selection_scores"] = result.selection_scores;
    return rec;
}

}  // namespace detail

struct SelectOptions {
    InputSpec input;
    std::vector<std::string> algorithms;
    SelectionConfig config;
    int repetitions = 1;
    std::uint64_t master_seed = 0;
    std::string output_dir;  // empty: no files written
};

/// Runs every (algorithm, repetition) pair. Repetition r draws its instance
/// from stream 2r and its selection rng from stream 2r+1 of the master seed,
/// so all algorithms within a repetition see the same instance (paired runs).
inline std::vector<RunRecord> cmd_select(const SelectOptions& opt) {
    if (opt.repetitions < 1) throw UsageError("repetitions must be at least 1");
    if (opt.algorithms.empty()) throw UsageError("no algorithms given");
    std::vector<RunRecord> records;
    const bool writing = !opt.output_dir.empty();
    if (writing) std::filesystem::create_directories(opt.output_dir);
    for (int rep = 0; rep < opt.repetitions; ++rep) {
        const std::uint64_t instance_seed =
            derived_seed(opt.master_seed, 2 * static_cast<std::uint64_t>(rep));
        const std::uint64_t selection_seed =
            derived_seed(opt.master_seed, 2 * static_cast<std::uint64_t>(rep) + 1);
        ResolvedInput input = resolve_input(opt.input, instance_seed);
        SelectionConfig cfg = opt.config;
        cfg.rng_seed = selection_seed;
        for (const auto& name : opt.algorithms) {
            RunRecord rr;
            rr.algorithm = name;
            rr.repetition = rep;
            rr.result = run_selector(input.graph, name, cfg);
            rr.record = detail::make_record(input.graph, input, rr.result, cfg, opt.master_seed,
                                            rep);
            if (writing) {
                std::string base = opt.output_dir + "/" + name + "_rep" + std::to_string(rep);
                std::ofstream js(base + ".json");
                js << rr.record.dump(2) << "\n";
                std::ofstream cs(base + "_qhistory.csv");
                detail::write_audit_header(cs, input.echo, opt.master_seed, cfg);
                detail::write_history_csv(cs, rr.result.history);
            }
            records.push_back(std::move(rr));
        }
    }
    return records;
}

/// Q(q) activation curve for one algorithm: one row per seed addition up to
/// the stop rule. Returns the history and optionally writes <outdir>/curve_<alg>.csv.
inline std::vector<QPoint> cmd_curve(const InputSpec& input_spec, const std::string& algorithm,
                                     const SelectionConfig& config, std::uint64_t master_seed,
                                     const std::string& output_dir) {
    ResolvedInput input = resolve_input(input_spec, derived_seed(master_seed, 0));
    SelectionConfig cfg = config;
    cfg.rng_seed = derived_seed(master_seed, 1);
    SelectionResult result = run_selector(input.graph, algorithm, cfg);
    if (!output_dir.empty()) {
        std::filesystem::create_directories(output_dir);
        std::ofstream out(output_dir + "/curve_" + algorithm + ".csv");
        detail::write_audit_header(out, input.echo, master_seed, cfg);
        detail::write_history_csv(out, result.history);
    }
    return result.history;
}

struct HciTraceRow {
    int hci_order;
    NodeId activation_index;  // 1-based position in the seed sequence
    NodeLabel node;
    std::int64_t hci;
};

/// HCI evolution trace: the HCI_n value each seed carried when HCI-TM picked
/// it, for n = 1 and n = 2. Writes <outdir>/trace_hci.csv.
inline std::vector<HciTraceRow> cmd_trace_hci(const InputSpec& input_spec,
                                              const SelectionConfig& config,
                                              std::uint64_t master_seed,
                                              const std::string& output_dir) {
    ResolvedInput input = resolve_input(input_spec, derived_seed(master_seed, 0));
    std::vector<HciTraceRow> rows;
    for (int order : {1, 2}) {
        SelectionConfig cfg = config;
        cfg.hci_order = order;
        cfg.rng_seed = derived_seed(master_seed, 1);
        SelectionResult result = hci_tm_select(input.graph, cfg);
        for (std::size_t k = 0; k < result.seeds.size(); ++k)
            rows.push_back({order, static_cast<NodeId>(k + 1),
                            input.graph.node_label(result.seeds[k]),
                            static_cast<std::int64_t>(result.selection_scores[k])});
    }
    if (!output_dir.empty()) {
        std::filesystem::create_directories(output_dir);
        std::ofstream out(output_dir + "/trace_hci.csv");
        detail::write_audit_header(out, input.echo, master_seed, config);
        out << "hci_order,activation_index,node,hci\n";
        for (const auto& row : rows)
            out << row.hci_order << ',' << row.activation_index << ',' << row.node << ','
                << row.hci << "\n";
    }
    return rows;
}

/// Least-squares slope of y against x.
inline double fit_slope(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 2) throw UsageError("slope fit needs at least two points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto [x, y] : points) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = static_cast<double>(points.size());
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

struct BenchOptions {
    GeneratorSpec base;  // nodes field is overridden by each sweep size
    std::vector<NodeId> sizes;
    /// edges = ratio * nodes at every size
    double edge_ratio = 0.3;
    std::vector<std::string> algorithms;
    SelectionConfig config;
    int repetitions = 1;
    std::uint64_t master_seed = 0;
    std::string output_dir;
};

struct BenchRow {
    std::string algorithm;
    NodeId nodes;
    NodeId realized_nodes;
    int repetition;
    double elapsed_seconds;
};

struct BenchReport {
    std::vector<BenchRow> rows;
    std::map<std::string, double> slopes;  // log10 T vs log10 N, mean over reps
};

namespace detail {

/// Thread CPU time; wall clocks are too noisy for scaling fits on shared
/// machines.
inline double cpu_seconds() {
    timespec ts{};
    clock_gettime(CLOCK_THREAD_CPUTIME_ID, &ts);
    return static_cast<double>(ts.tv_sec) + static_cast<double>(ts.tv_nsec) * 1e-9;
}

// Fixed-cost control algorithm for calibrating the bench slope fit.
inline void dummy_selector() {
    volatile std::uint64_t acc = 0x2545F4914F6CDD1DULL;
    for (int k = 0; k < 20'000'000; ++k) {
        std::uint64_t x = acc;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        acc = x;
    }
}

}  // namespace detail

/// Times each selector end-to-end over the size sweep (selection loop only,
/// no file I/O) and fits the log10(T) vs log10(N) slope per algorithm.
/// Instance seeds come from stream 2*(size_index*repetitions + rep),
/// selection seeds from the following odd stream.
inline BenchReport cmd_bench(const BenchOptions& opt) {
    if (opt.sizes.size() < 3) throw UsageError("bench sweep needs at least three sizes");
    if (opt.algorithms.empty()) throw UsageError("no algorithms given");
    BenchReport report;
    std::map<std::string, std::map<NodeId, std::pair<double, int>>> sums;
    for (std::size_t si = 0; si < opt.sizes.size(); ++si) {
        for (int rep = 0; rep < opt.repetitions; ++rep) {
            const std::uint64_t stream =
                2 * (static_cast<std::uint64_t>(si) * static_cast<std::uint64_t>(opt.repetitions) +
                     static_cast<std::uint64_t>(rep));
            GeneratorSpec gspec = opt.base;
            gspec.nodes = opt.sizes[si];
            gspec.edges = std::max<EdgeId>(
                1, static_cast<EdgeId>(opt.edge_ratio * static_cast<double>(gspec.nodes)));
            gspec.rng_seed = derived_seed(opt.master_seed, stream);
            Hypergraph graph = giant_component(generate(gspec).graph).graph;
            SelectionConfig cfg = opt.config;
            cfg.rng_seed = derived_seed(opt.master_seed, stream + 1);
            for (const auto& name : opt.algorithms) {
                double start = detail::cpu_seconds();
                if (name == "dummy")
                    detail::dummy_selector();
                else
                    run_selector(graph, name, cfg);
                double elapsed = detail::cpu_seconds() - start;
                report.rows.push_back({name, opt.sizes[si], graph.node_count(), rep, elapsed});
                auto& cell = sums[name][opt.sizes[si]];
                cell.first += elapsed;
                cell.second += 1;
            }
        }
    }
    for (const auto& [name, by_size] : sums) {
        std::vector<std::pair<double, double>> points;
        for (const auto& [size, cell] : by_size)
            points.push_back({std::log10(static_cast<double>(size)),
                              std::log10(cell.first / cell.second)});
        report.slopes[name] = fit_slope(points);
    }
    if (!opt.output_dir.empty()) {
        std::filesystem::create_directories(opt.output_dir);
        std::ofstream csv(opt.output_dir + "/bench.csv");
        csv << "# master_seed " << opt.master_seed << "\n";
        csv << "# generator " << to_json(opt.base).dump() << "\n";
        csv << "algorithm,nodes,realized_nodes,log10_nodes,rep,elapsed_seconds,log10_elapsed\n";
        for (const auto& row : report.rows)
            csv << row.algorithm << ',' << row.nodes << ',' << row.realized_nodes << ','
                << format_double(std::log10(static_cast<double>(row.nodes))) << ','
                << row.repetition << ',' << format_double(row.elapsed_seconds) << ','
                << format_double(std::log10(row.elapsed_seconds)) << "\n";
        nlohmann::json summary{{"master_seed", opt.master_seed},
                               {"generator", to_json(opt.base)},
                               {"slopes", report.slopes}};
        std::ofstream js(opt.output_dir + "/bench_summary.json");
        js << summary.dump(2) << "\n";
    }
    return report;
}

/// Writes <out_base>.hg (hyperedge list) and <out_base>.json (spec echo plus
/// realized sizes).
inline GeneratedHypergraph cmd_generate(const GeneratorSpec& spec, const std::string& out_base) {
    GeneratedHypergraph gen = generate(spec);
    if (!out_base.empty()) {
        std::filesystem::path base(out_base);
        if (base.has_parent_path()) std::filesystem::create_directories(base.parent_path());
        std::ofstream hg(out_base + ".hg");
        if (!hg) throw IoError("cannot write '" + out_base + ".hg'");
        save_hyperedge_list(hg, gen.graph);
        nlohmann::json sidecar{{"spec", to_json(gen.spec)},
                               {"realized_nodes", gen.graph.node_count()},
                               {"realized_edges", gen.graph.edge_count()},
                               {"dropped_edges", gen.dropped_edges},
                               {"rng_seed", gen.spec.rng_seed}};
        std::ofstream js(out_base + ".json");
        js << sidecar.dump(2) << "\n";
    }
    return gen;
}

}  // namespace hyperinf

#endif  // HYPERINF_EXPERIMENT_HPP
