#pragma once

#include <functional>
#include <nlohmann/json.hpp>
#include <numeric>
#include <string>
#include <vector>

#include "featgraph/dataset.hpp"
#include "featgraph/decision_tree.hpp"
#include "featgraph/feature_graph.hpp"
#include "featgraph/rng.hpp"

namespace featgraph {

// Per-feature importance scores from one method, with a deterministic
// ranking (descending score, ties by feature order).
struct ImportanceReport {
    std::string method;
    std::vector<std::string> features;
    std::vector<double> scores;
    std::vector<std::size_t> ranking;
};

inline ImportanceReport make_report(std::string method, std::vector<std::string> features,
                                    std::vector<double> scores) {
    ImportanceReport r;
    r.method = std::move(method);
    r.features = std::move(features);
    r.scores = std::move(scores);
    r.ranking.resize(r.scores.size());
    std::iota(r.ranking.begin(), r.ranking.end(), std::size_t{0});
    std::stable_sort(r.ranking.begin(), r.ranking.end(), [&](std::size_t a, std::size_t b) {
        return r.scores[a] > r.scores[b];
    });
    return r;
}

// Row sums of the normalized adjacency; the graph-derived importance.
inline ImportanceReport graph_importance(const FeatureGraph& g) {
    const auto fi = feature_importance(g);
    return make_report("graph-centrality", fi.features, fi.scores);
}

// Total weighted Gini decrease per split feature, normalized to sum 1.
// Features never split on score exactly 0.
inline ImportanceReport gini_importance(const DecisionTree& tree) {
    std::vector<double> scores(tree.feature_names.size(), 0.0);
    const double n_root = tree.nodes.empty()
                              ? 0.0
                              : static_cast<double>(tree.nodes.front().n_samples);
    for (const auto& node : tree.nodes) {
        if (node.feature < 0) continue;
        scores[static_cast<std::size_t>(node.feature)] +=
            (static_cast<double>(node.n_samples) / n_root) * node.split_gain;
    }
    double total = 0.0;
    for (double s : scores) total += s;
    if (total > 0.0)
        for (double& s : scores) s /= total;
    return make_report("gini", tree.feature_names, scores);
}

using Predictor = std::function<std::string(const Dataset&, std::size_t)>;

inline double predictor_accuracy(const Predictor& predict, const Dataset& ds) {
    std::size_t hits = 0;
    for (std::size_t s = 0; s < ds.n_rows(); ++s)
        if (predict(ds, s) == ds.targets()[s]) ++hits;
    return static_cast<double>(hits) / static_cast<double>(ds.n_rows());
}

// Mean accuracy drop over seeded within-column shuffles. A feature the
// predictor never consults scores exactly 0 (its shuffles cannot change
// any prediction).
inline ImportanceReport permutation_importance(const Predictor& predict, const Dataset& ds,
                                               int repeats = 10, std::uint64_t seed = 0) {
    if (repeats < 1) throw std::runtime_error("permutation_importance: repeats must be >= 1");
    const double baseline = predictor_accuracy(predict, ds);
    const std::size_t m = ds.n_features();
    std::vector<double> scores(m, 0.0);

    std::vector<std::size_t> perm(ds.n_rows());
    for (std::size_t f = 0; f < m; ++f) {
        double drop_sum = 0.0;
        for (int rep = 0; rep < repeats; ++rep) {
            Rng rng(Rng::derive(seed, f * static_cast<std::size_t>(repeats) +
                                          static_cast<std::size_t>(rep)));
            std::iota(perm.begin(), perm.end(), std::size_t{0});
            rng.shuffle(perm);

            // Rebuild the dataset with column f permuted.
            std::vector<std::vector<double>> nums(m);
            std::vector<std::vector<std::string>> cats(m);
            for (std::size_t c = 0; c < m; ++c) {
                if (ds.kind(c) == ColumnKind::numeric) {
                    nums[c].resize(ds.n_rows());
                    for (std::size_t s = 0; s < ds.n_rows(); ++s)
                        nums[c][s] = ds.numeric_at(c == f ? perm[s] : s, c);
                } else {
                    cats[c].resize(ds.n_rows());
                    for (std::size_t s = 0; s < ds.n_rows(); ++s)
                        cats[c][s] = ds.categorical_at(c == f ? perm[s] : s, c);
                }
            }
            Dataset shuffled(ds.feature_names(), ds.column_kinds(), std::move(nums),
                             std::move(cats), ds.targets(), ds.target_name());
            drop_sum += baseline - predictor_accuracy(predict, shuffled);
        }
        scores[f] = drop_sum / repeats;
    }
    return make_report("permutation", ds.feature_names(), scores);
}

// ---- exports ---------------------------------------------------------------

inline std::string importance_to_csv(const ImportanceReport& r) {
    std::string out = "feature,score,rank\n";
    std::vector<std::size_t> rank_of(r.features.size(), 0);
    for (std::size_t pos = 0; pos < r.ranking.size(); ++pos)
        rank_of[r.ranking[pos]] = pos + 1;
    for (std::size_t i = 0; i < r.features.size(); ++i)
        out += csv::join_row({r.features[i], csv::format_number(r.scores[i]),
                              std::to_string(rank_of[i])});
    return out;
}

inline nlohmann::ordered_json importance_to_json(const ImportanceReport& r) {
    nlohmann::ordered_json j;
    j["method"] = r.method;
    j["features"] = r.features;
    j["scores"] = r.scores;
    auto ranked = nlohmann::ordered_json::array();
    for (std::size_t idx : r.ranking) ranked.push_back(r.features[idx]);
    j["ranking"] = ranked;
    return j;
}

inline std::string importance_to_text(const ImportanceReport& r) {
    std::string out = "rank  score       feature\n";
    for (std::size_t pos = 0; pos < r.ranking.size(); ++pos) {
        const std::size_t i = r.ranking[pos];
        char line[128];
        std::snprintf(line, sizeof(line), "%-5zu %-11.6g %s\n", pos + 1, r.scores[i],
                      r.features[i].c_str());
        out += line;
    }
    return out;
}

}  // namespace featgraph
