#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "featgraph/csv.hpp"
#include "featgraph/dataset.hpp"

namespace featgraph {

enum class ConditionOp { le, lt, ge, gt, eq, ne, in_set, in_interval };

inline bool is_order_op(ConditionOp op) {
    return op == ConditionOp::le || op == ConditionOp::lt ||
           op == ConditionOp::ge || op == ConditionOp::gt ||
           op == ConditionOp::in_interval;
}

inline std::string op_symbol(ConditionOp op) {
    switch (op) {
        case ConditionOp::le: return "<=";
        case ConditionOp::lt: return "<";
        case ConditionOp::ge: return ">=";
        case ConditionOp::gt: return ">";
        case ConditionOp::eq: return "==";
        case ConditionOp::ne: return "!=";
        case ConditionOp::in_set: return "in";
        case ConditionOp::in_interval: return "in";
    }
    return "?";
}

// Operand of an equality/set condition. The raw text is kept alongside the
// parsed number because feature kinds are only known at evaluation time.
struct Operand {
    std::string text;
    std::optional<double> number;

    static Operand from_text(const std::string& raw) {
        Operand o;
        o.text = csv::trim(raw);
        o.number = csv::parse_number(o.text);
        return o;
    }
    static Operand from_number(double v) {
        Operand o;
        o.number = v;
        o.text = csv::format_number(v);
        return o;
    }
};

struct Condition {
    std::string feature;
    ConditionOp op = ConditionOp::le;
    double threshold = 0.0;           // le/lt/ge/gt
    Operand operand;                  // eq/ne
    std::vector<Operand> members;     // in_set
    double lo = 0.0, hi = 0.0;        // in_interval, closed bounds

    static Condition comparison(std::string feature, ConditionOp op, double threshold) {
        if (!is_order_op(op) || op == ConditionOp::in_interval)
            throw std::invalid_argument("comparison() expects <=, <, >= or >");
        Condition c;
        c.feature = std::move(feature);
        c.op = op;
        c.threshold = threshold;
        return c;
    }
    static Condition equality(std::string feature, ConditionOp op, Operand value) {
        if (op != ConditionOp::eq && op != ConditionOp::ne)
            throw std::invalid_argument("equality() expects == or !=");
        Condition c;
        c.feature = std::move(feature);
        c.op = op;
        c.operand = std::move(value);
        return c;
    }
    static Condition in_set(std::string feature, std::vector<Operand> members) {
        if (members.empty()) throw std::invalid_argument("in-set needs at least one member");
        Condition c;
        c.feature = std::move(feature);
        c.op = ConditionOp::in_set;
        c.members = std::move(members);
        return c;
    }
    static Condition interval(std::string feature, double lo, double hi) {
        if (!(lo <= hi)) throw std::invalid_argument("interval requires lo <= hi");
        Condition c;
        c.feature = std::move(feature);
        c.op = ConditionOp::in_interval;
        c.lo = lo;
        c.hi = hi;
        return c;
    }
};

// Conjunction of conditions with a class consequent. An empty condition
// list is legal and satisfied by every sample; such rules arise from
// condition removal and from a split-free decision tree.
struct Rule {
    std::vector<Condition> conditions;
    std::string consequent;
};

struct RuleSet {
    std::vector<Rule> rules;
    std::string source;  // provenance tag, e.g. "parsed" or "tree"

    std::size_t size() const { return rules.size(); }
};

namespace detail {

inline bool eval_numeric(const Condition& c, double x) {
    switch (c.op) {
        case ConditionOp::le: return x <= c.threshold;
        case ConditionOp::lt: return x < c.threshold;
        case ConditionOp::ge: return x >= c.threshold;
        case ConditionOp::gt: return x > c.threshold;
        case ConditionOp::in_interval: return c.lo <= x && x <= c.hi;
        case ConditionOp::eq:
        case ConditionOp::ne: {
            if (!c.operand.number)
                throw std::runtime_error("condition on numeric feature '" + c.feature +
                                         "' compares against non-numeric value '" +
                                         c.operand.text + "'");
            const bool equal = x == *c.operand.number;
            return c.op == ConditionOp::eq ? equal : !equal;
        }
        case ConditionOp::in_set: {
            for (const auto& member : c.members)
                if (member.number && x == *member.number) return true;
            return false;
        }
    }
    return false;
}

inline bool eval_categorical(const Condition& c, const std::string& v) {
    switch (c.op) {
        case ConditionOp::eq: return v == c.operand.text;
        case ConditionOp::ne: return v != c.operand.text;
        case ConditionOp::in_set: {
            for (const auto& member : c.members)
                if (v == member.text) return true;
            return false;
        }
        default:
            throw std::runtime_error("order operator applied to categorical feature '" +
                                     c.feature + "'");
    }
}

}  // namespace detail

inline bool condition_holds(const Condition& c, const Dataset& ds, std::size_t row) {
    auto col = ds.feature_index(c.feature);
    if (!col)
        throw std::runtime_error("rule references unknown feature: " + c.feature);
    if (ds.kind(*col) == ColumnKind::numeric)
        return detail::eval_numeric(c, ds.numeric_at(row, *col));
    return detail::eval_categorical(c, ds.categorical_at(row, *col));
}

// True iff every condition holds; vacuously true for empty antecedents.
inline bool satisfies(const Rule& r, const Dataset& ds, std::size_t row) {
    for (const auto& c : r.conditions)
        if (!condition_holds(c, ds, row)) return false;
    return true;
}

// D^k: indices of samples satisfying the rule.
inline SampleIndexSet covered_set(const Rule& r, const Dataset& ds) {
    SampleIndexSet out;
    for (std::size_t s = 0; s < ds.n_rows(); ++s)
        if (satisfies(r, ds, s)) out.indices.push_back(s);
    return out;
}

// R_-h: the rule with every condition on feature v stripped. Removing all
// conditions leaves the empty-antecedent rule.
inline Rule remove_feature(const Rule& r, const std::string& v) {
    Rule out;
    out.consequent = r.consequent;
    for (const auto& c : r.conditions)
        if (c.feature != v) out.conditions.push_back(c);
    return out;
}

inline bool rule_uses_feature(const Rule& r, const std::string& v) {
    for (const auto& c : r.conditions)
        if (c.feature == v) return true;
    return false;
}

// ---- canonical DSL formatting -------------------------------------------

namespace detail {

inline bool needs_quoting(const std::string& name) {
    if (name.empty()) return true;
    for (char ch : name) {
        const bool word = (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') ||
                          (ch >= '0' && ch <= '9') || ch == '_' || ch == '.' ||
                          ch == '-' || ch == '+';
        if (!word) return true;
    }
    return false;
}

inline std::string format_name(const std::string& name) {
    if (!needs_quoting(name)) return name;
    std::string out = "\"";
    for (char ch : name) {
        if (ch == '"' || ch == '\\') out += '\\';
        out += ch;
    }
    out += '"';
    return out;
}

inline std::string format_operand(const Operand& o) {
    if (o.number) return csv::format_number(*o.number);
    return format_name(o.text);
}

}  // namespace detail

inline std::string format_condition(const Condition& c) {
    const std::string name = detail::format_name(c.feature);
    switch (c.op) {
        case ConditionOp::le:
        case ConditionOp::lt:
        case ConditionOp::ge:
        case ConditionOp::gt:
            return name + " " + op_symbol(c.op) + " " + csv::format_number(c.threshold);
        case ConditionOp::eq:
        case ConditionOp::ne:
            return name + " " + op_symbol(c.op) + " " + detail::format_operand(c.operand);
        case ConditionOp::in_set: {
            std::string out = name + " in {";
            for (std::size_t i = 0; i < c.members.size(); ++i) {
                if (i > 0) out += ", ";
                out += detail::format_operand(c.members[i]);
            }
            return out + "}";
        }
        case ConditionOp::in_interval:
            return name + " in [" + csv::format_number(c.lo) + ", " +
                   csv::format_number(c.hi) + "]";
    }
    return "";
}

inline std::string format_rule(const Rule& r) {
    std::string out;
    for (std::size_t i = 0; i < r.conditions.size(); ++i) {
        if (i > 0) out += " AND ";
        out += format_condition(r.conditions[i]);
    }
    if (r.conditions.empty()) out += "TRUE";
    out += " => " + detail::format_name(r.consequent);
    return out;
}

inline std::string format_rules(const RuleSet& rs) {
    std::string out;
    for (const auto& r : rs.rules) out += format_rule(r) + "\n";
    return out;
}

}  // namespace featgraph
