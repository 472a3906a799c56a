#pragma once

#include <cstdint>
#include <nlohmann/json.hpp>
#include <stdexcept>
#include <string>
#include <vector>

#include "featgraph/dataset.hpp"
#include "featgraph/matrix.hpp"
#include "featgraph/rules.hpp"

namespace featgraph {

// Selectable relevance metrics. The error-increase feature metric and the
// covering*(1-error) rule metric are the defaults used for graphs; the
// association-rule style alternatives are documented extensions and never
// defaults. Lift is not bounded by 1, so graphs cannot be built from it.
enum class FeatureMetric { error_increase, impurity_gain };
enum class RuleMetric { relevance, support, confidence, lift };

inline std::string to_string(FeatureMetric m) {
    return m == FeatureMetric::error_increase ? "error_increase" : "impurity_gain";
}
inline std::string to_string(RuleMetric m) {
    switch (m) {
        case RuleMetric::relevance: return "relevance";
        case RuleMetric::support: return "support";
        case RuleMetric::confidence: return "confidence";
        case RuleMetric::lift: return "lift";
    }
    return "?";
}

inline FeatureMetric feature_metric_from_string(const std::string& s) {
    if (s == "error_increase") return FeatureMetric::error_increase;
    if (s == "impurity_gain") return FeatureMetric::impurity_gain;
    throw std::runtime_error("unknown feature metric: " + s);
}
inline RuleMetric rule_metric_from_string(const std::string& s) {
    if (s == "relevance") return RuleMetric::relevance;
    if (s == "support") return RuleMetric::support;
    if (s == "confidence") return RuleMetric::confidence;
    if (s == "lift") return RuleMetric::lift;
    throw std::runtime_error("unknown rule metric: " + s);
}

namespace detail {

// Covered-sample class histogram for one rule. All relevance metrics are
// ratios of these integer counts; divisions happen once, at the end.
struct CoverCounts {
    std::vector<std::int64_t> per_class;
    std::int64_t total = 0;
};

inline CoverCounts count_cover(const Rule& r, const Dataset& ds) {
    CoverCounts cc;
    cc.per_class.assign(ds.n_classes(), 0);
    for (std::size_t s = 0; s < ds.n_rows(); ++s) {
        if (satisfies(r, ds, s)) {
            cc.per_class[static_cast<std::size_t>(ds.target_id(s))]++;
            cc.total++;
        }
    }
    return cc;
}

inline std::vector<std::int64_t> class_counts(const Dataset& ds) {
    std::vector<std::int64_t> counts(ds.n_classes(), 0);
    for (std::size_t s = 0; s < ds.n_rows(); ++s)
        counts[static_cast<std::size_t>(ds.target_id(s))]++;
    return counts;
}

inline int require_consequent(const Dataset& ds, const Rule& r) {
    auto id = ds.class_id(r.consequent);
    if (!id)
        throw std::runtime_error("rule consequent '" + r.consequent +
                                 "' is not a class label of the dataset");
    return *id;
}

// covering = |D^k n D_i| / |D_i|, 0 when |D_i| = 0.
inline double covering_of(const CoverCounts& cc, std::int64_t class_total, int class_id) {
    if (class_total == 0) return 0.0;
    return static_cast<double>(cc.per_class[static_cast<std::size_t>(class_id)]) /
           static_cast<double>(class_total);
}

// error = |D^k n D_i'| / |D_i'|, 0 when |D_i'| = 0.
inline double error_of(const CoverCounts& cc, std::int64_t off_class_total, int class_id) {
    if (off_class_total == 0) return 0.0;
    const std::int64_t off =
        cc.total - cc.per_class[static_cast<std::size_t>(class_id)];
    return static_cast<double>(off) / static_cast<double>(off_class_total);
}

// Gini impurity of the covered-class histogram; 0 for an empty cover.
inline double gini_of(const CoverCounts& cc) {
    if (cc.total == 0) return 0.0;
    double sq = 0.0;
    for (std::int64_t c : cc.per_class) {
        const double p = static_cast<double>(c) / static_cast<double>(cc.total);
        sq += p * p;
    }
    return 1.0 - sq;
}

}  // namespace detail

// Proportion of same-class samples that satisfy the rule.
inline double covering(const Dataset& ds, const Rule& r) {
    const int cid = detail::require_consequent(ds, r);
    const auto cc = detail::count_cover(r, ds);
    const auto totals = detail::class_counts(ds);
    return detail::covering_of(cc, totals[static_cast<std::size_t>(cid)], cid);
}

// Proportion of other-class samples that satisfy the rule.
inline double error(const Dataset& ds, const Rule& r) {
    const int cid = detail::require_consequent(ds, r);
    const auto cc = detail::count_cover(r, ds);
    const auto totals = detail::class_counts(ds);
    const std::int64_t off =
        static_cast<std::int64_t>(ds.n_rows()) - totals[static_cast<std::size_t>(cid)];
    return detail::error_of(cc, off, cid);
}

// covering * (1 - error): quality of the rule for its own class.
inline double rule_relevance(const Dataset& ds, const Rule& r) {
    const int cid = detail::require_consequent(ds, r);
    const auto cc = detail::count_cover(r, ds);
    const auto totals = detail::class_counts(ds);
    const std::int64_t cls = totals[static_cast<std::size_t>(cid)];
    const std::int64_t off = static_cast<std::int64_t>(ds.n_rows()) - cls;
    return detail::covering_of(cc, cls, cid) * (1.0 - detail::error_of(cc, off, cid));
}

// Error increase caused by stripping the conditions on feature v, scaled by
// the covering of the intact rule. Zero when v does not occur in the rule.
inline double feature_relevance(const Dataset& ds, const std::string& v, const Rule& r) {
    if (!rule_uses_feature(r, v)) return 0.0;
    const int cid = detail::require_consequent(ds, r);
    const auto totals = detail::class_counts(ds);
    const std::int64_t cls = totals[static_cast<std::size_t>(cid)];
    const std::int64_t off = static_cast<std::int64_t>(ds.n_rows()) - cls;
    const auto cc = detail::count_cover(r, ds);
    const auto cc_reduced = detail::count_cover(remove_feature(r, v), ds);
    const double err = detail::error_of(cc, off, cid);
    const double err_reduced = detail::error_of(cc_reduced, off, cid);
    return (err_reduced - err) * detail::covering_of(cc, cls, cid);
}

struct AltRuleMetrics {
    double support = 0.0;
    double confidence = 0.0;
    double lift = 0.0;
};

// Association-rule style metrics; standard definitions since only the
// names are fixed: support = |D^k n D_i|/d, confidence = |D^k n D_i|/|D^k|,
// lift = confidence / (|D_i|/d). Empty denominators yield 0.
inline AltRuleMetrics alt_rule_metrics(const Dataset& ds, const Rule& r) {
    const int cid = detail::require_consequent(ds, r);
    const auto cc = detail::count_cover(r, ds);
    const auto totals = detail::class_counts(ds);
    const std::int64_t hit = cc.per_class[static_cast<std::size_t>(cid)];
    const std::int64_t cls = totals[static_cast<std::size_t>(cid)];
    const auto d = static_cast<double>(ds.n_rows());

    AltRuleMetrics out;
    out.support = static_cast<double>(hit) / d;
    out.confidence =
        cc.total == 0 ? 0.0 : static_cast<double>(hit) / static_cast<double>(cc.total);
    out.lift = cls == 0 ? 0.0 : out.confidence / (static_cast<double>(cls) / d);
    return out;
}

// Gini impurity drop from the reduced-rule cover to the intact-rule cover,
// floored at 0, weighted by the intact cover fraction.
inline double impurity_gain_relevance(const Dataset& ds, const std::string& v,
                                      const Rule& r) {
    if (!rule_uses_feature(r, v)) return 0.0;
    detail::require_consequent(ds, r);
    const auto cc = detail::count_cover(r, ds);
    if (cc.total == 0) return 0.0;
    const auto cc_reduced = detail::count_cover(remove_feature(r, v), ds);
    const double gain = detail::gini_of(cc_reduced) - detail::gini_of(cc);
    if (gain <= 0.0) return 0.0;
    return gain * (static_cast<double>(cc.total) / static_cast<double>(ds.n_rows()));
}

// P matrix (rules x features) and q vector for a rule set over a dataset.
struct RelevanceResult {
    Matrix p;
    std::vector<double> q;
    std::vector<std::string> rule_ids;
    std::vector<std::string> feature_names;
    FeatureMetric feature_metric = FeatureMetric::error_increase;
    RuleMetric rule_metric = RuleMetric::relevance;
    // Number of covering/error evaluations that hit an empty denominator
    // (|D_i| = 0 or |D_i'| = 0) and fell back to 0.
    std::size_t degenerate_denominators = 0;
};

inline RelevanceResult relevance_matrix(const Dataset& ds, const RuleSet& rs,
                                        FeatureMetric feature_metric = FeatureMetric::error_increase,
                                        RuleMetric rule_metric = RuleMetric::relevance) {
    if (rs.rules.empty()) throw std::runtime_error("relevance_matrix: empty rule set");
    const std::size_t n = rs.rules.size();
    const std::size_t m = ds.n_features();

    RelevanceResult out;
    out.p = Matrix(n, m, 0.0);
    out.q.assign(n, 0.0);
    out.feature_names = ds.feature_names();
    out.feature_metric = feature_metric;
    out.rule_metric = rule_metric;
    out.rule_ids.reserve(n);
    for (std::size_t k = 0; k < n; ++k) out.rule_ids.push_back("R" + std::to_string(k + 1));

    const auto totals = detail::class_counts(ds);
    const auto d = static_cast<std::int64_t>(ds.n_rows());

    for (std::size_t k = 0; k < n; ++k) {
        const Rule& r = rs.rules[k];
        const int cid = detail::require_consequent(ds, r);
        const std::int64_t cls = totals[static_cast<std::size_t>(cid)];
        const std::int64_t off = d - cls;
        if (cls == 0 || off == 0) out.degenerate_denominators++;

        const auto cc = detail::count_cover(r, ds);
        const double cov = detail::covering_of(cc, cls, cid);
        const double err = detail::error_of(cc, off, cid);

        switch (rule_metric) {
            case RuleMetric::relevance:
                out.q[k] = cov * (1.0 - err);
                break;
            case RuleMetric::support:
                out.q[k] = static_cast<double>(cc.per_class[static_cast<std::size_t>(cid)]) /
                           static_cast<double>(d);
                break;
            case RuleMetric::confidence:
                out.q[k] = cc.total == 0
                               ? 0.0
                               : static_cast<double>(cc.per_class[static_cast<std::size_t>(cid)]) /
                                     static_cast<double>(cc.total);
                break;
            case RuleMetric::lift: {
                const auto m_ = alt_rule_metrics(ds, r);
                out.q[k] = m_.lift;
                break;
            }
        }

        for (std::size_t i = 0; i < m; ++i) {
            const std::string& feature = ds.feature_names()[i];
            if (!rule_uses_feature(r, feature)) continue;  // p stays exactly 0
            if (feature_metric == FeatureMetric::error_increase) {
                const auto cc_reduced = detail::count_cover(remove_feature(r, feature), ds);
                out.p(k, i) = (detail::error_of(cc_reduced, off, cid) - err) * cov;
            } else {
                out.p(k, i) = impurity_gain_relevance(ds, feature, r);
            }
        }
    }
    return out;
}

// ---- prediction from (possibly overlapping) rule sets ---------------------

// Predicts with the highest-q satisfied rule; falls back to the majority
// class of the analysis dataset when nothing fires. Ties keep rule order.
struct RuleSetPredictor {
    RuleSet rules;
    std::vector<double> q;
    std::string majority;

    std::string predict(const Dataset& ds, std::size_t row) const {
        int best = -1;
        for (std::size_t k = 0; k < rules.rules.size(); ++k) {
            if (!satisfies(rules.rules[k], ds, row)) continue;
            if (best < 0 || q[k] > q[static_cast<std::size_t>(best)])
                best = static_cast<int>(k);
        }
        if (best < 0) return majority;
        return rules.rules[static_cast<std::size_t>(best)].consequent;
    }
};

inline RuleSetPredictor make_ruleset_predictor(const Dataset& analysis_ds,
                                               const RuleSet& rs,
                                               const RelevanceResult& rd) {
    if (rd.q.size() != rs.rules.size())
        throw std::runtime_error("predictor: q length does not match rule count");
    return RuleSetPredictor{rs, rd.q, analysis_ds.majority_class()};
}

inline std::string ruleset_predict(const RuleSet& rs, const RelevanceResult& rd,
                                   const Dataset& ds, std::size_t row,
                                   const std::string& majority) {
    RuleSetPredictor p{rs, rd.q, majority};
    return p.predict(ds, row);
}

// ---- exports ---------------------------------------------------------------

inline std::string relevance_p_to_csv(const RelevanceResult& rd) {
    std::string out;
    std::vector<std::string> header;
    header.push_back("rule");
    for (const auto& f : rd.feature_names) header.push_back(f);
    out += csv::join_row(header);
    for (std::size_t k = 0; k < rd.p.rows(); ++k) {
        std::vector<std::string> row;
        row.push_back(rd.rule_ids[k]);
        for (std::size_t i = 0; i < rd.p.cols(); ++i)
            row.push_back(csv::format_number(rd.p(k, i)));
        out += csv::join_row(row);
    }
    return out;
}

inline std::string relevance_q_to_csv(const RelevanceResult& rd) {
    std::string out = "rule," + to_string(rd.rule_metric) + "\n";
    for (std::size_t k = 0; k < rd.q.size(); ++k)
        out += csv::join_row({rd.rule_ids[k], csv::format_number(rd.q[k])});
    return out;
}

inline nlohmann::ordered_json relevance_to_json(const RelevanceResult& rd) {
    nlohmann::ordered_json j;
    j["rules"] = rd.rule_ids;
    j["features"] = rd.feature_names;
    auto p = nlohmann::ordered_json::array();
    for (std::size_t k = 0; k < rd.p.rows(); ++k) {
        auto row = nlohmann::ordered_json::array();
        for (std::size_t i = 0; i < rd.p.cols(); ++i) row.push_back(rd.p(k, i));
        p.push_back(row);
    }
    j["p"] = p;
    j["q"] = rd.q;
    j["metric_tags"] = {{"feature", to_string(rd.feature_metric)},
                        {"rule", to_string(rd.rule_metric)}};
    return j;
}

}  // namespace featgraph
