#pragma once

#include <limits>
#include <vector>

#include "featgraph/decision_tree.hpp"
#include "featgraph/rules.hpp"

namespace featgraph {

namespace detail {

struct PathBound {
    std::size_t feature;
    std::size_t first_pos;
    bool has_lower = false;  // from "x > t" edges
    bool has_upper = false;  // from "x <= t" edges
    double lower = -std::numeric_limits<double>::infinity();
    double upper = std::numeric_limits<double>::infinity();
};

inline void collect_rules(const DecisionTree& tree, int at,
                          std::vector<PathBound>& bounds, RuleSet& out) {
    const TreeNode& node = tree.nodes[static_cast<std::size_t>(at)];
    if (node.feature < 0) {
        Rule rule;
        rule.consequent = tree.class_labels[static_cast<std::size_t>(node.majority)];
        for (const auto& b : bounds) {
            const std::string& name = tree.feature_names[b.feature];
            if (b.has_lower)
                rule.conditions.push_back(
                    Condition::comparison(name, ConditionOp::gt, b.lower));
            if (b.has_upper)
                rule.conditions.push_back(
                    Condition::comparison(name, ConditionOp::le, b.upper));
        }
        out.rules.push_back(std::move(rule));
        return;
    }

    auto descend = [&](bool left) {
        const auto f = static_cast<std::size_t>(node.feature);
        std::size_t slot = bounds.size();
        for (std::size_t i = 0; i < bounds.size(); ++i)
            if (bounds[i].feature == f) slot = i;
        const bool fresh = slot == bounds.size();
        PathBound saved;
        if (fresh) {
            bounds.push_back(PathBound{f, bounds.size(), false, false,
                                       -std::numeric_limits<double>::infinity(),
                                       std::numeric_limits<double>::infinity()});
        } else {
            saved = bounds[slot];
        }
        PathBound& b = bounds[slot];
        if (left) {  // x <= threshold: tightest upper bound wins
            if (!b.has_upper || node.threshold < b.upper) b.upper = node.threshold;
            b.has_upper = true;
        } else {  // x > threshold: tightest lower bound wins
            if (!b.has_lower || node.threshold > b.lower) b.lower = node.threshold;
            b.has_lower = true;
        }
        collect_rules(tree, left ? node.left : node.right, bounds, out);
        if (fresh) bounds.pop_back();
        else bounds[slot] = saved;
    };
    descend(true);
    descend(false);
}

}  // namespace detail

// Translates each root-to-leaf path into an if-then rule, merging repeated
// bounds on one feature into the tightest lower/upper pair. Leaves are
// visited left-first, so rule order is the tree's in-order leaf order. The
// rules partition the feature space: every sample satisfies exactly one.
inline RuleSet tree_to_rules(const DecisionTree& tree) {
    if (tree.empty()) throw std::runtime_error("tree_to_rules: empty tree");
    RuleSet out;
    out.source = "tree";
    std::vector<detail::PathBound> bounds;
    detail::collect_rules(tree, 0, bounds, out);
    return out;
}

}  // namespace featgraph
