#ifndef HYPERINF_HYPERGRAPH_IO_HPP
#define HYPERINF_HYPERGRAPH_IO_HPP

#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "hyperinf/hypergraph.hpp"

namespace hyperinf {

// Hyperedge-list text format: '#' lines and blank lines are ignored, an
// optional "%threshold <real>" directive sets the uniform threshold, every
// other line is one hyperedge as whitespace-separated node ids.

/// Parses the hyperedge-list format. `threshold_override`, when given, wins
/// over a %threshold directive; one of the two must supply a threshold.
inline Hypergraph load_hyperedge_list(std::istream& in,
                                      std::optional<double> threshold_override = std::nullopt) {
    std::vector<std::vector<NodeLabel>> edges;
    std::optional<double> directive;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        if (line[first] == '#') continue;
        if (line[first] == '%') {
            std::istringstream ls(line.substr(first + 1));
            std::string key;
            ls >> key;
            if (key != "threshold") throw ParseError(line_no, "unknown directive '%" + key + "'");
            double t = 0.0;
            if (!(ls >> t)) throw ParseError(line_no, "malformed %threshold directive");
            directive = t;
            continue;
        }
        std::istringstream ls(line);
        std::vector<NodeLabel> edge;
        NodeLabel v = 0;
        while (ls >> v) {
            if (v < 0) throw ParseError(line_no, "negative node id");
            edge.push_back(v);
        }
        if (!ls.eof()) throw ParseError(line_no, "non-numeric token in hyperedge line");
        if (edge.empty()) throw ParseError(line_no, "empty hyperedge line");
        edges.push_back(std::move(edge));
    }
    std::optional<double> threshold = threshold_override ? threshold_override : directive;
    if (!threshold)
        throw ParseError(line_no, "no threshold: pass an override or add a %threshold directive");
    return Hypergraph::from_edge_lists(edges, *threshold);
}

/// Writes a hypergraph in the hyperedge-list format using external labels.
/// Only a uniform threshold can be represented; the first edge's threshold is
/// emitted and a mismatch elsewhere is an error.
inline void save_hyperedge_list(std::ostream& out, const Hypergraph& h) {
    if (h.edge_count() > 0) {
        double t = h.threshold(0);
        for (EdgeId e = 1; e < h.edge_count(); ++e)
            if (h.threshold(e) != t)
                throw IoError("hyperedge-list format requires a uniform threshold");
        out.precision(17);
        out << "%threshold " << t << "\n";
    }
    for (EdgeId e = 0; e < h.edge_count(); ++e) {
        const auto& edge = h.members(e);
        for (std::size_t k = 0; k < edge.size(); ++k) {
            if (k) out << ' ';
            out << h.node_label(edge[k]);
        }
        out << "\n";
    }
}

}  // namespace hyperinf

#endif  // HYPERINF_HYPERGRAPH_IO_HPP
