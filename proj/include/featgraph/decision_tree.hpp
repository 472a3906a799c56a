#pragma once

#include <algorithm>
#include <cstdint>
#include <nlohmann/json.hpp>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "featgraph/dataset.hpp"

namespace featgraph {

struct TreeParams {
    std::optional<int> max_depth;  // nullopt: unbounded
    int min_samples_leaf = 1;
    double min_impurity_decrease = 0.0;
};

struct TreeNode {
    int feature = -1;  // split column; -1 marks a leaf
    double threshold = 0.0;
    int left = -1, right = -1;
    std::vector<std::int64_t> class_counts;
    int majority = 0;
    double impurity = 0.0;
    double split_gain = 0.0;  // node-local Gini decrease of the chosen split
    std::size_t n_samples = 0;
};

// Binary CART classifier over the numeric columns of a dataset. Splits are
// x <= threshold (left) vs x > threshold (right) with thresholds at
// midpoints of consecutive distinct values, so no sample falls in a gap.
// Categorical columns are not split candidates.
struct DecisionTree {
    std::vector<TreeNode> nodes;  // nodes[0] is the root
    std::vector<std::string> feature_names;
    std::vector<std::string> class_labels;
    TreeParams params;

    bool empty() const { return nodes.empty(); }

    const std::string& predict(const Dataset& ds, std::size_t row) const {
        int at = 0;
        while (nodes[static_cast<std::size_t>(at)].feature >= 0) {
            const TreeNode& n = nodes[static_cast<std::size_t>(at)];
            const double x = ds.numeric_at(row, static_cast<std::size_t>(n.feature));
            at = x <= n.threshold ? n.left : n.right;
        }
        return class_labels[static_cast<std::size_t>(
            nodes[static_cast<std::size_t>(at)].majority)];
    }

    int depth() const { return node_depth(0); }

    double accuracy(const Dataset& ds) const {
        std::size_t hits = 0;
        for (std::size_t s = 0; s < ds.n_rows(); ++s)
            if (predict(ds, s) == ds.targets()[s]) ++hits;
        return static_cast<double>(hits) / static_cast<double>(ds.n_rows());
    }

private:
    int node_depth(int at) const {
        const TreeNode& n = nodes[static_cast<std::size_t>(at)];
        if (n.feature < 0) return 0;
        return 1 + std::max(node_depth(n.left), node_depth(n.right));
    }
};

namespace detail {

inline double gini_from_counts(const std::vector<std::int64_t>& counts, std::int64_t total) {
    if (total == 0) return 0.0;
    double sq = 0.0;
    for (std::int64_t c : counts) {
        const double p = static_cast<double>(c) / static_cast<double>(total);
        sq += p * p;
    }
    return 1.0 - sq;
}

struct SplitChoice {
    bool found = false;
    std::size_t feature = 0;
    double threshold = 0.0;
    double gain = 0.0;
};

class TreeBuilder {
public:
    TreeBuilder(const Dataset& ds, const TreeParams& params)
        : ds_(ds), params_(params), n_classes_(ds.n_classes()) {
        for (std::size_t c = 0; c < ds.n_features(); ++c)
            if (ds.kind(c) == ColumnKind::numeric) numeric_cols_.push_back(c);
    }

    DecisionTree build() {
        DecisionTree tree;
        tree.feature_names = ds_.feature_names();
        tree.class_labels = ds_.class_labels();
        tree.params = params_;
        std::vector<std::size_t> rows(ds_.n_rows());
        for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
        tree_ = &tree;
        grow(rows, 0);
        return tree;
    }

private:
    int grow(std::vector<std::size_t>& rows, int depth) {
        TreeNode node;
        node.n_samples = rows.size();
        node.class_counts.assign(n_classes_, 0);
        for (std::size_t r : rows)
            node.class_counts[static_cast<std::size_t>(ds_.target_id(r))]++;
        node.majority = 0;
        for (std::size_t k = 1; k < n_classes_; ++k)
            if (node.class_counts[k] > node.class_counts[static_cast<std::size_t>(node.majority)])
                node.majority = static_cast<int>(k);
        node.impurity = gini_from_counts(node.class_counts,
                                         static_cast<std::int64_t>(rows.size()));

        const bool depth_ok = !params_.max_depth || depth < *params_.max_depth;
        const bool size_ok =
            rows.size() >= 2 * static_cast<std::size_t>(params_.min_samples_leaf) &&
            rows.size() >= 2;
        SplitChoice split;
        if (node.impurity > 0.0 && depth_ok && size_ok) split = best_split(rows, node);

        const int index = static_cast<int>(tree_->nodes.size());
        tree_->nodes.push_back(node);
        if (!split.found) return index;

        std::vector<std::size_t> left_rows, right_rows;
        left_rows.reserve(rows.size());
        right_rows.reserve(rows.size());
        for (std::size_t r : rows) {
            if (ds_.numeric_at(r, split.feature) <= split.threshold)
                left_rows.push_back(r);
            else
                right_rows.push_back(r);
        }
        rows.clear();
        rows.shrink_to_fit();

        const int left = grow(left_rows, depth + 1);
        const int right = grow(right_rows, depth + 1);
        TreeNode& stored = tree_->nodes[static_cast<std::size_t>(index)];
        stored.feature = static_cast<int>(split.feature);
        stored.threshold = split.threshold;
        stored.split_gain = split.gain;
        stored.left = left;
        stored.right = right;
        return index;
    }

    // Greedy best split by Gini decrease. Features are scanned in column
    // order and thresholds in ascending order with a strictly-greater
    // acceptance test, so ties resolve to the lowest feature index, then
    // the lowest threshold.
    SplitChoice best_split(const std::vector<std::size_t>& rows, const TreeNode& node) {
        SplitChoice best;
        const auto n = static_cast<std::int64_t>(rows.size());
        const std::size_t min_leaf = static_cast<std::size_t>(params_.min_samples_leaf);

        std::vector<std::pair<double, int>> sorted;
        std::vector<std::int64_t> left_counts(n_classes_);
        for (std::size_t f : numeric_cols_) {
            sorted.clear();
            sorted.reserve(rows.size());
            const auto& col = ds_.numeric_column(f);
            for (std::size_t r : rows) sorted.emplace_back(col[r], ds_.target_id(r));
            std::sort(sorted.begin(), sorted.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            if (sorted.front().first == sorted.back().first) continue;

            std::fill(left_counts.begin(), left_counts.end(), 0);
            std::int64_t n_left = 0;
            for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
                left_counts[static_cast<std::size_t>(sorted[i].second)]++;
                ++n_left;
                if (sorted[i].first == sorted[i + 1].first) continue;
                if (n_left < static_cast<std::int64_t>(min_leaf)) continue;
                const std::int64_t n_right = n - n_left;
                if (n_right < static_cast<std::int64_t>(min_leaf)) break;

                double right_gini;
                {
                    double sq = 0.0;
                    for (std::size_t k = 0; k < n_classes_; ++k) {
                        const double p =
                            static_cast<double>(node.class_counts[k] - left_counts[k]) /
                            static_cast<double>(n_right);
                        sq += p * p;
                    }
                    right_gini = 1.0 - sq;
                }
                const double left_gini = gini_from_counts(left_counts, n_left);
                const double children =
                    (static_cast<double>(n_left) * left_gini +
                     static_cast<double>(n_right) * right_gini) /
                    static_cast<double>(n);
                double gain = node.impurity - children;
                if (gain < 0.0) gain = 0.0;  // fp noise on no-gain splits
                if (gain < params_.min_impurity_decrease) continue;
                const double mid = (sorted[i].first + sorted[i + 1].first) / 2.0;
                if (mid >= sorted[i + 1].first) continue;  // adjacent doubles
                if (!best.found || gain > best.gain) {
                    best.found = true;
                    best.feature = f;
                    best.threshold = mid;
                    best.gain = gain;
                }
            }
        }
        return best;
    }

    const Dataset& ds_;
    TreeParams params_;
    std::size_t n_classes_;
    std::vector<std::size_t> numeric_cols_;
    DecisionTree* tree_ = nullptr;
};

}  // namespace detail

inline DecisionTree fit_tree(const Dataset& ds, const TreeParams& params = {}) {
    if (params.min_samples_leaf < 1)
        throw std::runtime_error("min_samples_leaf must be >= 1");
    return detail::TreeBuilder(ds, params).build();
}

// ---- JSON persistence ------------------------------------------------------

inline nlohmann::ordered_json tree_to_json(const DecisionTree& tree) {
    nlohmann::ordered_json j;
    j["params"]["max_depth"] =
        tree.params.max_depth ? nlohmann::ordered_json(*tree.params.max_depth)
                              : nlohmann::ordered_json(nullptr);
    j["params"]["min_samples_leaf"] = tree.params.min_samples_leaf;
    j["params"]["min_impurity_decrease"] = tree.params.min_impurity_decrease;
    j["feature_names"] = tree.feature_names;
    j["class_labels"] = tree.class_labels;
    auto nodes = nlohmann::ordered_json::array();
    for (const auto& n : tree.nodes) {
        nlohmann::ordered_json jn;
        jn["feature"] = n.feature;
        jn["threshold"] = n.threshold;
        jn["left"] = n.left;
        jn["right"] = n.right;
        jn["class_counts"] = n.class_counts;
        jn["majority"] = n.majority;
        jn["impurity"] = n.impurity;
        jn["split_gain"] = n.split_gain;
        jn["n_samples"] = n.n_samples;
        nodes.push_back(jn);
    }
    j["nodes"] = nodes;
    return j;
}

inline DecisionTree tree_from_json(const nlohmann::json& j) {
    DecisionTree tree;
    const auto& params = j.at("params");
    if (!params.at("max_depth").is_null())
        tree.params.max_depth = params.at("max_depth").get<int>();
    tree.params.min_samples_leaf = params.at("min_samples_leaf").get<int>();
    tree.params.min_impurity_decrease = params.at("min_impurity_decrease").get<double>();
    tree.feature_names = j.at("feature_names").get<std::vector<std::string>>();
    tree.class_labels = j.at("class_labels").get<std::vector<std::string>>();
    for (const auto& jn : j.at("nodes")) {
        TreeNode n;
        n.feature = jn.at("feature").get<int>();
        n.threshold = jn.at("threshold").get<double>();
        n.left = jn.at("left").get<int>();
        n.right = jn.at("right").get<int>();
        n.class_counts = jn.at("class_counts").get<std::vector<std::int64_t>>();
        n.majority = jn.at("majority").get<int>();
        n.impurity = jn.at("impurity").get<double>();
        n.split_gain = jn.at("split_gain").get<double>();
        n.n_samples = jn.at("n_samples").get<std::size_t>();
        tree.nodes.push_back(std::move(n));
    }
    if (tree.nodes.empty()) throw std::runtime_error("tree JSON has no nodes");
    return tree;
}

}  // namespace featgraph
