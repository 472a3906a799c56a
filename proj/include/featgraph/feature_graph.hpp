#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "featgraph/matrix.hpp"
#include "featgraph/relevance.hpp"

namespace featgraph {

// Weighted undirected feature graph with self-edges, stored as a symmetric
// adjacency matrix normalized so all entries sum to 100. A graph built from
// zero relevance everywhere (e.g. a class with no rules) keeps the all-zero
// matrix and carries the zero flag instead of erroring.
struct FeatureGraph {
    Matrix a;                                // normalized adjacency A'
    std::vector<std::string> feature_names;
    std::optional<std::string> class_filter;
    FeatureMetric feature_metric = FeatureMetric::error_increase;
    RuleMetric rule_metric = RuleMetric::relevance;
    bool zero = false;
    double raw_sum = 0.0;  // sum of A before normalization, for cross-graph scaling
};

// Eq-style multiplicative projection of (P, q) onto an m x m adjacency:
//   a_ij = 1 - prod_k (1 - p_ki * p_kj * q_k), including i = j self-edges.
// Entries are computed once per unordered pair and mirrored, so the result
// is exactly symmetric. For rule counts above the threshold the running
// product is accumulated in log space to avoid underflow.
inline Matrix project(const Matrix& p, const std::vector<double>& q,
                      std::size_t log_space_threshold = 1000) {
    const std::size_t n = p.rows();
    const std::size_t m = p.cols();
    if (q.size() != n) throw std::runtime_error("project: P rows != q length");
    for (std::size_t k = 0; k < n; ++k) {
        if (!(q[k] >= 0.0 && q[k] <= 1.0))
            throw std::runtime_error("project: q entry out of [0,1]");
        for (std::size_t i = 0; i < m; ++i)
            if (!(p(k, i) >= 0.0 && p(k, i) <= 1.0))
                throw std::runtime_error("project: P entry out of [0,1]");
    }

    const bool log_space = n > log_space_threshold;
    Matrix a(m, m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i; j < m; ++j) {
            double value;
            if (!log_space) {
                double prod = 1.0;
                for (std::size_t k = 0; k < n; ++k)
                    prod *= 1.0 - p(k, i) * p(k, j) * q[k];
                value = 1.0 - prod;
            } else {
                double log_prod = 0.0;
                bool saturated = false;
                for (std::size_t k = 0; k < n; ++k) {
                    const double t = p(k, i) * p(k, j) * q[k];
                    if (t >= 1.0) { saturated = true; break; }
                    log_prod += std::log1p(-t);
                }
                value = saturated ? 1.0 : 1.0 - std::exp(log_prod);
            }
            a(i, j) = value;
            a(j, i) = value;
        }
    }
    return a;
}

// Scales a non-negative symmetric matrix so its entries sum to 100.
// Returned flag is true when the input sums to zero (the zero graph).
inline std::pair<Matrix, bool> normalize(const Matrix& a) {
    if (a.rows() != a.cols()) throw std::runtime_error("normalize: matrix not square");
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (a(i, j) < 0.0) throw std::runtime_error("normalize: negative entry");
            if (a(i, j) != a(j, i)) throw std::runtime_error("normalize: matrix not symmetric");
        }
    const double total = a.sum();
    if (total == 0.0) return {a, true};
    Matrix out = a;
    const double scale = 100.0 / total;
    for (std::size_t i = 0; i < out.rows(); ++i)
        for (std::size_t j = 0; j < out.cols(); ++j) out(i, j) *= scale;
    return {out, false};
}

// Restricts a rule set to one consequent class (R_i).
inline RuleSet class_rules(const RuleSet& rs, const std::string& class_label) {
    RuleSet out;
    out.source = rs.source;
    for (const auto& r : rs.rules)
        if (r.consequent == class_label) out.rules.push_back(r);
    return out;
}

// Projects a rule set onto the feature graph. With a class filter, P and q
// are recomputed over the class's rules only; a class with no rules yields
// the flagged zero graph.
inline FeatureGraph build_graph(const Dataset& ds, const RuleSet& rs,
                                const std::optional<std::string>& class_filter = std::nullopt,
                                FeatureMetric feature_metric = FeatureMetric::error_increase,
                                RuleMetric rule_metric = RuleMetric::relevance) {
    FeatureGraph g;
    g.feature_names = ds.feature_names();
    g.class_filter = class_filter;
    g.feature_metric = feature_metric;
    g.rule_metric = rule_metric;

    const RuleSet* active = &rs;
    RuleSet filtered;
    if (class_filter) {
        if (!ds.class_id(*class_filter))
            throw std::runtime_error("unknown class label: " + *class_filter);
        filtered = class_rules(rs, *class_filter);
        active = &filtered;
    }
    if (active->rules.empty()) {
        g.a = Matrix(ds.n_features(), ds.n_features(), 0.0);
        g.zero = true;
        g.raw_sum = 0.0;
        return g;
    }

    const auto rd = relevance_matrix(ds, *active, feature_metric, rule_metric);
    const Matrix raw = project(rd.p, rd.q);
    g.raw_sum = raw.sum();
    auto [normalized, zero] = normalize(raw);
    g.a = std::move(normalized);
    g.zero = zero;
    return g;
}

namespace detail {

// Column permutation taking g's feature order into `names` order.
inline std::vector<std::size_t> alignment_permutation(
    const FeatureGraph& g, const std::vector<std::string>& names) {
    if (g.feature_names.size() != names.size())
        throw std::runtime_error("graph distance: feature sets differ in size");
    std::vector<std::size_t> perm(names.size());
    for (std::size_t i = 0; i < names.size(); ++i) {
        auto it = std::find(g.feature_names.begin(), g.feature_names.end(), names[i]);
        if (it == g.feature_names.end())
            throw std::runtime_error("graph distance: feature '" + names[i] +
                                     "' missing from one graph");
        perm[i] = static_cast<std::size_t>(it - g.feature_names.begin());
    }
    return perm;
}

}  // namespace detail

// Frobenius distance between two graphs after aligning feature order by
// name. Graphs built under different metric selectors never compare.
inline double graph_distance(const FeatureGraph& g1, const FeatureGraph& g2) {
    if (g1.feature_metric != g2.feature_metric || g1.rule_metric != g2.rule_metric)
        throw std::runtime_error(
            "graph distance: graphs were built under different metrics (" +
            to_string(g1.feature_metric) + "/" + to_string(g1.rule_metric) + " vs " +
            to_string(g2.feature_metric) + "/" + to_string(g2.rule_metric) + ")");
    const auto perm = detail::alignment_permutation(g2, g1.feature_names);
    const std::size_t m = g1.feature_names.size();
    Matrix aligned(m, m, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) aligned(i, j) = g2.a(perm[i], perm[j]);
    return frobenius_distance(g1.a, aligned);
}

// Degree-centrality importance: row sums of A'. Scores of a non-zero graph
// sum to 100. Ranking is by descending score, ties by feature order; the
// zero graph reports all-zero scores and an empty ranking.
struct FeatureImportance {
    std::vector<std::string> features;
    std::vector<double> scores;
    std::vector<std::size_t> ranking;
    bool zero = false;
};

inline FeatureImportance feature_importance(const FeatureGraph& g) {
    FeatureImportance out;
    out.features = g.feature_names;
    out.zero = g.zero;
    out.scores.resize(g.a.rows());
    for (std::size_t i = 0; i < g.a.rows(); ++i) out.scores[i] = g.a.row_sum(i);
    if (!g.zero) {
        out.ranking.resize(out.scores.size());
        std::iota(out.ranking.begin(), out.ranking.end(), std::size_t{0});
        std::stable_sort(out.ranking.begin(), out.ranking.end(),
                         [&](std::size_t a, std::size_t b) {
                             return out.scores[a] > out.scores[b];
                         });
    }
    return out;
}

}  // namespace featgraph
