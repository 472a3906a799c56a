#pragma once

#include <string>
#include <vector>

#include "featgraph/cross_validation.hpp"
#include "featgraph/feature_graph.hpp"
#include "featgraph/importance.hpp"
#include "featgraph/stats.hpp"

namespace featgraph {

struct StabilityRow {
    std::string method;
    double mean_rho = 0.0;
    std::size_t n_models = 0;
};

namespace detail {

inline double mean_pairwise_spearman(const std::vector<std::vector<double>>& score_sets) {
    if (score_sets.size() < 2)
        throw std::runtime_error("stability needs at least 2 models to compare");
    double sum = 0.0;
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < score_sets.size(); ++i)
        for (std::size_t j = i + 1; j < score_sets.size(); ++j) {
            sum += spearman(score_sets[i], score_sets[j]);
            ++pairs;
        }
    return sum / static_cast<double>(pairs);
}

inline std::vector<double> method_scores(const std::string& method, const Dataset& ds,
                                         const DecisionTree& tree, int perm_repeats,
                                         std::uint64_t perm_seed) {
    if (method == "graph") {
        const FeatureGraph g = build_graph(ds, tree_to_rules(tree));
        return feature_importance(g).scores;
    }
    if (method == "gini") return gini_importance(tree).scores;
    if (method == "permutation") {
        Predictor p = [&tree](const Dataset& d, std::size_t row) {
            return tree.predict(d, row);
        };
        return permutation_importance(p, ds, perm_repeats, perm_seed).scores;
    }
    throw std::runtime_error("unknown importance method: " + method +
                             " (expected graph, gini or permutation)");
}

}  // namespace detail

// Rank stability across tree depths: one tree per depth on the full
// dataset, then the mean pairwise Spearman correlation of each method's
// score vectors across those models.
inline std::vector<StabilityRow> stability_by_depth(
    const Dataset& ds, const std::vector<int>& depths,
    const std::vector<std::string>& methods, std::uint64_t seed = 0,
    int perm_repeats = 10) {
    if (depths.size() < 2)
        throw std::runtime_error("stability needs at least 2 depths to compare");

    std::vector<DecisionTree> trees;
    trees.reserve(depths.size());
    for (int d : depths) trees.push_back(fit_tree(ds, TreeParams{d, 1, 0.0}));

    std::vector<StabilityRow> rows;
    for (const auto& method : methods) {
        std::vector<std::vector<double>> scores;
        for (std::size_t t = 0; t < trees.size(); ++t)
            scores.push_back(detail::method_scores(method, ds, trees[t], perm_repeats,
                                                   Rng::derive(seed, t)));
        rows.push_back({method, detail::mean_pairwise_spearman(scores), trees.size()});
    }
    return rows;
}

// Rank stability across cross-validation folds: nested CV per the training
// protocol, each method scored per fold on that fold's training data.
inline std::vector<StabilityRow> stability_by_folds(
    const Dataset& ds, int k_folds, const std::vector<std::string>& methods,
    std::uint64_t seed = 0, int perm_repeats = 10) {
    const CvResult cv = cross_validate(ds, default_param_grid(), k_folds, 3, seed);

    std::vector<StabilityRow> rows;
    for (const auto& method : methods) {
        std::vector<std::vector<double>> scores;
        for (std::size_t j = 0; j < cv.folds.size(); ++j) {
            const Dataset train_ds = ds.subset(cv.folds[j].train_indices);
            scores.push_back(detail::method_scores(method, train_ds, cv.folds[j].tree,
                                                   perm_repeats, Rng::derive(seed, 500 + j)));
        }
        rows.push_back({method, detail::mean_pairwise_spearman(scores), cv.folds.size()});
    }
    return rows;
}

inline std::string stability_to_csv(const std::vector<StabilityRow>& rows) {
    std::string out = "method,mean_spearman,models\n";
    for (const auto& r : rows)
        out += csv::join_row({r.method, csv::format_number(r.mean_rho),
                              std::to_string(r.n_models)});
    return out;
}

inline std::string stability_to_text(const std::vector<StabilityRow>& rows) {
    std::string out = "method            mean pairwise Spearman (models)\n";
    for (const auto& r : rows) {
        char line[128];
        std::snprintf(line, sizeof(line), "%-17s %.6g (%zu)\n", r.method.c_str(),
                      r.mean_rho, r.n_models);
        out += line;
    }
    return out;
}

}  // namespace featgraph
