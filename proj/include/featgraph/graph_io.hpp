#pragma once

#include <nlohmann/json.hpp>
#include <stdexcept>
#include <string>

#include "featgraph/csv.hpp"
#include "featgraph/feature_graph.hpp"

namespace featgraph {

enum class GraphFormat { dot, graphml, json, csv };

inline GraphFormat graph_format_from_string(const std::string& s) {
    if (s == "dot") return GraphFormat::dot;
    if (s == "graphml") return GraphFormat::graphml;
    if (s == "json") return GraphFormat::json;
    if (s == "csv") return GraphFormat::csv;
    throw std::runtime_error("unknown graph format: " + s +
                             " (expected dot, graphml, json or csv)");
}

struct GraphExportOptions {
    // Drops diagonal entries from the edge list (importance still includes
    // them), matching the usual feature-graph drawing convention.
    bool omit_self_edges = false;
};

namespace detail {

inline std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out += c;
        }
    }
    return out;
}

inline std::string dot_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace detail

// Undirected DOT document. Node width encodes centrality, edge penwidth
// encodes weight; zero-weight pairs are not edges.
inline std::string graph_to_dot(const FeatureGraph& g, const GraphExportOptions& opts = {}) {
    const auto importance = feature_importance(g);
    const std::size_t m = g.a.rows();

    double max_weight = 0.0;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i; j < m; ++j)
            if (!(opts.omit_self_edges && i == j))
                max_weight = std::max(max_weight, g.a(i, j));

    std::string out = "graph features {\n";
    out += "  node [shape=circle];\n";
    for (std::size_t i = 0; i < m; ++i) {
        const double width = 0.5 + 2.0 * importance.scores[i] / 100.0;
        out += "  " + detail::dot_quote(g.feature_names[i]) + " [importance=" +
               csv::format_number(importance.scores[i]) +
               ", width=" + csv::format_number(width) + "];\n";
    }
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i; j < m; ++j) {
            if (opts.omit_self_edges && i == j) continue;
            const double w = g.a(i, j);
            if (w == 0.0) continue;
            const double penwidth = 0.5 + 4.0 * (max_weight > 0.0 ? w / max_weight : 0.0);
            out += "  " + detail::dot_quote(g.feature_names[i]) + " -- " +
                   detail::dot_quote(g.feature_names[j]) + " [weight=" +
                   csv::format_number(w) + ", penwidth=" + csv::format_number(penwidth) +
                   "];\n";
        }
    }
    out += "}\n";
    return out;
}

inline std::string graph_to_graphml(const FeatureGraph& g,
                                    const GraphExportOptions& opts = {}) {
    const auto importance = feature_importance(g);
    const std::size_t m = g.a.rows();
    std::string out =
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
        "  <key id=\"label\" for=\"node\" attr.name=\"label\" attr.type=\"string\"/>\n"
        "  <key id=\"importance\" for=\"node\" attr.name=\"importance\" attr.type=\"double\"/>\n"
        "  <key id=\"weight\" for=\"edge\" attr.name=\"weight\" attr.type=\"double\"/>\n"
        "  <graph id=\"features\" edgedefault=\"undirected\">\n";
    for (std::size_t i = 0; i < m; ++i) {
        out += "    <node id=\"n" + std::to_string(i) + "\">\n";
        out += "      <data key=\"label\">" + detail::xml_escape(g.feature_names[i]) +
               "</data>\n";
        out += "      <data key=\"importance\">" +
               csv::format_number(importance.scores[i]) + "</data>\n";
        out += "    </node>\n";
    }
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i; j < m; ++j) {
            if (opts.omit_self_edges && i == j) continue;
            const double w = g.a(i, j);
            if (w == 0.0) continue;
            out += "    <edge source=\"n" + std::to_string(i) + "\" target=\"n" +
                   std::to_string(j) + "\">\n";
            out += "      <data key=\"weight\">" + csv::format_number(w) + "</data>\n";
            out += "    </edge>\n";
        }
    }
    out += "  </graph>\n</graphml>\n";
    return out;
}

inline nlohmann::ordered_json graph_to_json(const FeatureGraph& g) {
    nlohmann::ordered_json j;
    j["features"] = g.feature_names;
    auto rows = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < g.a.rows(); ++i) {
        auto row = nlohmann::ordered_json::array();
        for (std::size_t k = 0; k < g.a.cols(); ++k) row.push_back(g.a(i, k));
        rows.push_back(row);
    }
    j["matrix"] = rows;
    if (g.class_filter) j["class_filter"] = *g.class_filter;
    else j["class_filter"] = nullptr;
    j["metric_tags"] = {{"feature", to_string(g.feature_metric)},
                        {"rule", to_string(g.rule_metric)}};
    j["zero_flag"] = g.zero;
    j["total_weight"] = g.zero ? 0.0 : 100.0;
    j["raw_sum"] = g.raw_sum;
    return j;
}

// Labeled adjacency matrix; always the full matrix, self-edges included.
inline std::string graph_to_csv(const FeatureGraph& g) {
    std::string out;
    std::vector<std::string> header;
    header.push_back("");
    for (const auto& f : g.feature_names) header.push_back(f);
    out += csv::join_row(header);
    for (std::size_t i = 0; i < g.a.rows(); ++i) {
        std::vector<std::string> row;
        row.push_back(g.feature_names[i]);
        for (std::size_t k = 0; k < g.a.cols(); ++k)
            row.push_back(csv::format_number(g.a(i, k)));
        out += csv::join_row(row);
    }
    return out;
}

inline std::string export_graph(const FeatureGraph& g, GraphFormat format,
                                const GraphExportOptions& opts = {}) {
    switch (format) {
        case GraphFormat::dot: return graph_to_dot(g, opts);
        case GraphFormat::graphml: return graph_to_graphml(g, opts);
        case GraphFormat::json: return graph_to_json(g).dump(2) + "\n";
        case GraphFormat::csv: return graph_to_csv(g);
    }
    throw std::runtime_error("unknown graph format");
}

// Re-imports a labeled adjacency CSV produced by graph_to_csv.
inline FeatureGraph import_adjacency_csv(const std::string& text) {
    auto rows = csv::parse(text);
    if (rows.size() < 2) throw std::runtime_error("adjacency csv too short");
    FeatureGraph g;
    const std::size_t m = rows[0].size() - 1;
    for (std::size_t i = 1; i <= m; ++i) g.feature_names.push_back(rows[0][i]);
    if (rows.size() != m + 1) throw std::runtime_error("adjacency csv is not square");
    g.a = Matrix(m, m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        const auto& row = rows[i + 1];
        if (row.size() != m + 1) throw std::runtime_error("adjacency csv row width mismatch");
        if (row[0] != g.feature_names[i])
            throw std::runtime_error("adjacency csv row label mismatch: " + row[0]);
        for (std::size_t k = 0; k < m; ++k) {
            auto v = csv::parse_number(row[k + 1]);
            if (!v) throw std::runtime_error("adjacency csv cell is not numeric");
            g.a(i, k) = *v;
        }
    }
    g.zero = g.a.sum() == 0.0;
    return g;
}

}  // namespace featgraph
