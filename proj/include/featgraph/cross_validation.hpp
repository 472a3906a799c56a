#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "featgraph/dataset.hpp"
#include "featgraph/decision_tree.hpp"
#include "featgraph/relevance.hpp"
#include "featgraph/rng.hpp"
#include "featgraph/tree_rules.hpp"

namespace featgraph {

// The tuning grid: small but spanning under- and over-fit regimes.
inline std::vector<TreeParams> default_param_grid() {
    std::vector<TreeParams> grid;
    const std::optional<int> depths[] = {3, 4, 5, 6, 8, std::nullopt};
    const int min_leafs[] = {1, 5, 10};
    for (const auto& d : depths)
        for (int l : min_leafs) grid.push_back(TreeParams{d, l, 0.0});
    return grid;
}

// Parses a compact grid spec like "depth=3,4,none;leaf=1,5,10" into the
// cross product of the listed values. Omitted keys keep the default axis.
inline std::vector<TreeParams> parse_param_grid(const std::string& text) {
    std::vector<std::optional<int>> depths = {3, 4, 5, 6, 8, std::nullopt};
    std::vector<int> leafs = {1, 5, 10};

    auto split = [](const std::string& s, char sep) {
        std::vector<std::string> out;
        std::size_t start = 0;
        while (start <= s.size()) {
            const auto pos = s.find(sep, start);
            const std::string item =
                s.substr(start, pos == std::string::npos ? std::string::npos : pos - start);
            if (!item.empty()) out.push_back(item);
            if (pos == std::string::npos) break;
            start = pos + 1;
        }
        return out;
    };

    for (const auto& clause : split(text, ';')) {
        const auto eq = clause.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("grid clause needs key=values: " + clause);
        const std::string key = clause.substr(0, eq);
        const auto values = split(clause.substr(eq + 1), ',');
        if (values.empty()) throw std::runtime_error("grid clause has no values: " + clause);
        if (key == "depth") {
            depths.clear();
            for (const auto& v : values) {
                if (v == "none") depths.push_back(std::nullopt);
                else depths.push_back(std::stoi(v));
            }
        } else if (key == "leaf") {
            leafs.clear();
            for (const auto& v : values) leafs.push_back(std::stoi(v));
        } else {
            throw std::runtime_error("unknown grid key '" + key + "' (expected depth, leaf)");
        }
    }

    std::vector<TreeParams> grid;
    for (const auto& d : depths)
        for (int l : leafs) grid.push_back(TreeParams{d, l, 0.0});
    return grid;
}

// Stratified fold ids: per class, indices are shuffled with a seeded
// generator and dealt round-robin, so every fold gets a near-equal share
// of each class. Deterministic per seed.
inline std::vector<int> stratified_fold_ids(const Dataset& ds, int k, std::uint64_t seed) {
    if (k < 2) throw std::runtime_error("cross-validation needs k >= 2");
    std::vector<std::vector<std::size_t>> by_class(ds.n_classes());
    for (std::size_t s = 0; s < ds.n_rows(); ++s)
        by_class[static_cast<std::size_t>(ds.target_id(s))].push_back(s);
    for (std::size_t c = 0; c < by_class.size(); ++c) {
        if (by_class[c].size() < static_cast<std::size_t>(k))
            throw std::runtime_error(
                "class '" + ds.class_labels()[c] + "' has only " +
                std::to_string(by_class[c].size()) + " samples, fewer than " +
                std::to_string(k) + " folds; reduce --folds or merge rare classes");
    }
    std::vector<int> fold(ds.n_rows(), 0);
    for (std::size_t c = 0; c < by_class.size(); ++c) {
        Rng rng(Rng::derive(seed, c));
        rng.shuffle(by_class[c]);
        for (std::size_t i = 0; i < by_class[c].size(); ++i)
            fold[by_class[c][i]] = static_cast<int>(i % static_cast<std::size_t>(k));
    }
    return fold;
}

struct FoldModel {
    TreeParams chosen_params;
    DecisionTree tree;
    RuleSet rules;                      // tree paths over the training fold
    RelevanceResult relevance;          // computed on the training fold
    double test_accuracy = 0.0;
    std::vector<std::size_t> train_indices;
    std::vector<std::size_t> test_indices;
};

struct CvResult {
    std::vector<FoldModel> folds;
    double mean_accuracy = 0.0;
};

namespace detail {

inline double grid_candidate_score(const Dataset& train_ds, const TreeParams& params,
                                   const std::vector<int>& inner_fold, int k_inner) {
    double acc_sum = 0.0;
    for (int j = 0; j < k_inner; ++j) {
        std::vector<std::size_t> tr, te;
        for (std::size_t s = 0; s < train_ds.n_rows(); ++s)
            (inner_fold[s] == j ? te : tr).push_back(s);
        const Dataset fit_ds = train_ds.subset(tr);
        const DecisionTree tree = fit_tree(fit_ds, params);
        std::size_t hits = 0;
        for (std::size_t s : te)
            if (tree.predict(train_ds, s) == train_ds.targets()[s]) ++hits;
        acc_sum += static_cast<double>(hits) / static_cast<double>(te.size());
    }
    return acc_sum / k_inner;
}

}  // namespace detail

// Nested cross-validation: stratified outer folds, inner grid search on
// accuracy (ties keep grid order), refit on the outer training fold. Each
// fold model carries the rule set translated from its tree and the
// relevance result over its training fold.
inline CvResult cross_validate(const Dataset& ds,
                               const std::vector<TreeParams>& grid = default_param_grid(),
                               int k_outer = 5, int k_inner = 3,
                               std::uint64_t seed = 0) {
    if (grid.empty()) throw std::runtime_error("cross_validate: empty parameter grid");
    const auto outer_fold = stratified_fold_ids(ds, k_outer, Rng::derive(seed, 0));

    CvResult out;
    for (int j = 0; j < k_outer; ++j) {
        try {
            FoldModel fm;
            for (std::size_t s = 0; s < ds.n_rows(); ++s)
                (outer_fold[s] == j ? fm.test_indices : fm.train_indices).push_back(s);
            const Dataset train_ds = ds.subset(fm.train_indices);

            TreeParams best = grid.front();
            if (grid.size() > 1) {
                const auto inner_fold = stratified_fold_ids(
                    train_ds, k_inner,
                    Rng::derive(seed, 1000 + static_cast<std::uint64_t>(j)));
                double best_acc = -1.0;
                for (const auto& params : grid) {
                    const double acc =
                        detail::grid_candidate_score(train_ds, params, inner_fold, k_inner);
                    if (acc > best_acc) {
                        best_acc = acc;
                        best = params;
                    }
                }
            }

            fm.chosen_params = best;
            fm.tree = fit_tree(train_ds, best);
            fm.rules = tree_to_rules(fm.tree);
            fm.relevance = relevance_matrix(train_ds, fm.rules);
            std::size_t hits = 0;
            for (std::size_t s : fm.test_indices)
                if (fm.tree.predict(ds, s) == ds.targets()[s]) ++hits;
            fm.test_accuracy =
                static_cast<double>(hits) / static_cast<double>(fm.test_indices.size());
            out.folds.push_back(std::move(fm));
        } catch (const std::exception& e) {
            throw std::runtime_error("fold " + std::to_string(j + 1) + ": " + e.what());
        }
    }
    for (const auto& f : out.folds) out.mean_accuracy += f.test_accuracy;
    out.mean_accuracy /= static_cast<double>(out.folds.size());
    return out;
}

}  // namespace featgraph
