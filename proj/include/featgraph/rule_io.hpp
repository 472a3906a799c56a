#pragma once

#include <nlohmann/json.hpp>
#include <stdexcept>
#include <string>
#include <vector>

#include "featgraph/rules.hpp"

namespace featgraph {

// Thrown on malformed rule DSL input; carries 1-based line and column.
class RuleParseError : public std::runtime_error {
public:
    RuleParseError(std::size_t line, std::size_t col, const std::string& what)
        : std::runtime_error("rule parse error at line " + std::to_string(line) +
                             ", col " + std::to_string(col) + ": " + what),
          line_(line),
          col_(col) {}
    std::size_t line() const { return line_; }
    std::size_t col() const { return col_; }

private:
    std::size_t line_, col_;
};

namespace dsl {

struct Token {
    enum Kind { name, number, symbol, end } kind = end;
    std::string text;
    double value = 0.0;
    std::size_t col = 0;
};

// Tokenizes one DSL line. Symbols: <= < >= > == != => , { } [ ].
// Quoted names may contain spaces; backslash escapes " and \.
class LineLexer {
public:
    LineLexer(const std::string& line, std::size_t line_no)
        : line_(line), line_no_(line_no) {}

    Token next() {
        skip_ws();
        Token t;
        t.col = pos_ + 1;
        if (pos_ >= line_.size() || line_[pos_] == '#') {
            t.kind = Token::end;
            return t;
        }
        const char c = line_[pos_];
        if (c == '"') {
            ++pos_;
            std::string out;
            while (pos_ < line_.size() && line_[pos_] != '"') {
                if (line_[pos_] == '\\' && pos_ + 1 < line_.size()) ++pos_;
                out += line_[pos_++];
            }
            if (pos_ >= line_.size()) fail(t.col, "unterminated quoted name");
            ++pos_;
            t.kind = Token::name;
            t.text = out;
            return t;
        }
        if (c == '{' || c == '}' || c == '[' || c == ']' || c == ',') {
            ++pos_;
            t.kind = Token::symbol;
            t.text = std::string(1, c);
            return t;
        }
        if (c == '<' || c == '>' || c == '=' || c == '!') {
            std::string sym(1, c);
            if (pos_ + 1 < line_.size() &&
                (line_[pos_ + 1] == '=' || (c == '=' && line_[pos_ + 1] == '>'))) {
                sym += line_[pos_ + 1];
                pos_ += 2;
            } else {
                ++pos_;
            }
            if (sym == "=" || sym == "!")
                fail(t.col, "unknown operator '" + sym + "' (use == or !=)");
            t.kind = Token::symbol;
            t.text = sym;
            return t;
        }
        // bare word: identifier or number
        std::string word;
        while (pos_ < line_.size() && !is_break(line_[pos_])) word += line_[pos_++];
        t.text = word;
        if (auto num = csv::parse_number(word)) {
            t.kind = Token::number;
            t.value = *num;
        } else {
            t.kind = Token::name;
        }
        return t;
    }

    [[noreturn]] void fail(std::size_t col, const std::string& msg) const {
        throw RuleParseError(line_no_, col, msg);
    }

private:
    static bool is_break(char c) {
        return c == ' ' || c == '\t' || c == '\r' || c == '#' || c == '"' ||
               c == '{' || c == '}' || c == '[' || c == ']' || c == ',' ||
               c == '<' || c == '>' || c == '=' || c == '!';
    }
    void skip_ws() {
        while (pos_ < line_.size() &&
               (line_[pos_] == ' ' || line_[pos_] == '\t' || line_[pos_] == '\r'))
            ++pos_;
    }

    const std::string& line_;
    std::size_t line_no_;
    std::size_t pos_ = 0;
};

// Recursive-descent over the token stream of one line.
class LineParser {
public:
    LineParser(const std::string& line, std::size_t line_no)
        : lexer_(line, line_no), line_no_(line_no) {
        advance();
    }

    // rule := cond (AND cond)* "=>" label
    // The canonical empty antecedent is the single keyword TRUE.
    Rule parse_rule() {
        Rule rule;
        if (cur_.kind == Token::name && cur_.text == "TRUE") {
            advance();
        } else {
            rule.conditions.push_back(parse_condition());
            while (cur_.kind == Token::name && cur_.text == "AND") {
                advance();
                rule.conditions.push_back(parse_condition());
            }
        }
        expect_symbol("=>", "expected '=>' after antecedent");
        if (cur_.kind != Token::name && cur_.kind != Token::number)
            fail("expected class label after '=>'");
        rule.consequent = cur_.text;
        advance();
        if (cur_.kind == Token::symbol && cur_.text == "=>")
            fail("duplicate '=>' on one line");
        if (cur_.kind != Token::end) fail("unexpected trailing input '" + cur_.text + "'");
        return rule;
    }

private:
    Condition parse_condition() {
        if (cur_.kind == Token::symbol && cur_.text == "=>")
            fail("empty antecedent (authored rules need at least one condition)");
        if (cur_.kind != Token::name && cur_.kind != Token::number)
            fail("expected feature name");
        const std::string feature = cur_.text;
        advance();

        if (cur_.kind == Token::name && cur_.text == "in") {
            advance();
            return parse_in(feature);
        }
        if (cur_.kind != Token::symbol) fail("expected operator after '" + feature + "'");
        const std::string op = cur_.text;
        const std::size_t op_col = cur_.col;
        advance();

        if (op == "<=" || op == "<" || op == ">=" || op == ">") {
            if (cur_.kind != Token::number)
                lexer_.fail(op_col, "expected numeric value after '" + op + "'");
            const double v = cur_.value;
            advance();
            ConditionOp o = op == "<="  ? ConditionOp::le
                            : op == "<" ? ConditionOp::lt
                            : op == ">=" ? ConditionOp::ge
                                         : ConditionOp::gt;
            return Condition::comparison(feature, o, v);
        }
        if (op == "==" || op == "!=") {
            if (cur_.kind != Token::name && cur_.kind != Token::number)
                fail("expected value after '" + op + "'");
            Operand operand = cur_.kind == Token::number
                                  ? Operand::from_number(cur_.value)
                                  : Operand::from_text(cur_.text);
            advance();
            return Condition::equality(
                feature, op == "==" ? ConditionOp::eq : ConditionOp::ne, operand);
        }
        fail("unexpected operator '" + op + "'");
    }

    Condition parse_in(const std::string& feature) {
        if (cur_.kind == Token::symbol && cur_.text == "{") {
            advance();
            std::vector<Operand> members;
            while (true) {
                if (cur_.kind != Token::name && cur_.kind != Token::number)
                    fail("expected set member");
                members.push_back(cur_.kind == Token::number
                                      ? Operand::from_number(cur_.value)
                                      : Operand::from_text(cur_.text));
                advance();
                if (cur_.kind == Token::symbol && cur_.text == ",") {
                    advance();
                    continue;
                }
                break;
            }
            expect_symbol("}", "expected '}' to close value set");
            return Condition::in_set(feature, std::move(members));
        }
        if (cur_.kind == Token::symbol && cur_.text == "[") {
            advance();
            if (cur_.kind != Token::number) fail("expected numeric lower bound");
            const double lo = cur_.value;
            advance();
            expect_symbol(",", "expected ',' between interval bounds");
            if (cur_.kind != Token::number) fail("expected numeric upper bound");
            const double hi = cur_.value;
            advance();
            expect_symbol("]", "expected ']' to close interval");
            if (!(lo <= hi)) fail("interval bounds must satisfy lo <= hi");
            return Condition::interval(feature, lo, hi);
        }
        fail("expected '{' or '[' after 'in'");
    }

    void expect_symbol(const std::string& sym, const std::string& msg) {
        if (cur_.kind != Token::symbol || cur_.text != sym) fail(msg);
        advance();
    }
    [[noreturn]] void fail(const std::string& msg) { lexer_.fail(cur_.col, msg); }
    void advance() { cur_ = lexer_.next(); }

    LineLexer lexer_;
    std::size_t line_no_;
    Token cur_;
};

}  // namespace dsl

// Parses a rule DSL document: one rule per non-comment line, '#' comments.
inline RuleSet parse_rules(const std::string& text) {
    if (text.empty()) throw std::runtime_error("empty rule document");
    RuleSet rs;
    rs.source = "parsed";
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t nl = text.find('\n', start);
        const std::string line =
            text.substr(start, nl == std::string::npos ? std::string::npos : nl - start);
        ++line_no;
        const std::string stripped = csv::trim(line);
        if (!stripped.empty() && stripped[0] != '#') {
            dsl::LineParser parser(line, line_no);
            rs.rules.push_back(parser.parse_rule());
        }
        if (nl == std::string::npos) break;
        start = nl + 1;
    }
    if (rs.rules.empty()) throw std::runtime_error("rule document contains no rules");
    return rs;
}

// ---- JSON mirror ---------------------------------------------------------
// A rule set is a JSON array of {conditions: [...], consequent} objects.
// Conditions carry op plus value | values | lo,hi depending on the form.

inline nlohmann::ordered_json condition_to_json(const Condition& c) {
    nlohmann::ordered_json j;
    j["feature"] = c.feature;
    switch (c.op) {
        case ConditionOp::le:
        case ConditionOp::lt:
        case ConditionOp::ge:
        case ConditionOp::gt:
            j["op"] = op_symbol(c.op);
            j["value"] = c.threshold;
            break;
        case ConditionOp::eq:
        case ConditionOp::ne:
            j["op"] = op_symbol(c.op);
            if (c.operand.number) j["value"] = *c.operand.number;
            else j["value"] = c.operand.text;
            break;
        case ConditionOp::in_set: {
            j["op"] = "in";
            auto arr = nlohmann::ordered_json::array();
            for (const auto& m : c.members) {
                if (m.number) arr.push_back(*m.number);
                else arr.push_back(m.text);
            }
            j["values"] = arr;
            break;
        }
        case ConditionOp::in_interval:
            j["op"] = "in";
            j["lo"] = c.lo;
            j["hi"] = c.hi;
            break;
    }
    return j;
}

inline Condition condition_from_json(const nlohmann::json& j) {
    const std::string feature = j.at("feature").get<std::string>();
    const std::string op = j.at("op").get<std::string>();
    auto operand_of = [](const nlohmann::json& v) {
        if (v.is_number()) return Operand::from_number(v.get<double>());
        return Operand::from_text(v.get<std::string>());
    };
    if (op == "<=" || op == "<" || op == ">=" || op == ">") {
        ConditionOp o = op == "<="  ? ConditionOp::le
                        : op == "<" ? ConditionOp::lt
                        : op == ">=" ? ConditionOp::ge
                                     : ConditionOp::gt;
        return Condition::comparison(feature, o, j.at("value").get<double>());
    }
    if (op == "==" || op == "!=")
        return Condition::equality(feature,
                                   op == "==" ? ConditionOp::eq : ConditionOp::ne,
                                   operand_of(j.at("value")));
    if (op == "in") {
        if (j.contains("values")) {
            std::vector<Operand> members;
            for (const auto& v : j.at("values")) members.push_back(operand_of(v));
            return Condition::in_set(feature, std::move(members));
        }
        return Condition::interval(feature, j.at("lo").get<double>(),
                                   j.at("hi").get<double>());
    }
    throw std::runtime_error("unknown condition op in JSON: " + op);
}

inline nlohmann::ordered_json rules_to_json(const RuleSet& rs) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& r : rs.rules) {
        nlohmann::ordered_json jr;
        auto conds = nlohmann::ordered_json::array();
        for (const auto& c : r.conditions) conds.push_back(condition_to_json(c));
        jr["conditions"] = conds;
        jr["consequent"] = r.consequent;
        arr.push_back(jr);
    }
    return arr;
}

inline RuleSet rules_from_json(const nlohmann::json& j) {
    RuleSet rs;
    rs.source = "parsed";
    for (const auto& jr : j) {
        Rule r;
        for (const auto& jc : jr.at("conditions")) r.conditions.push_back(condition_from_json(jc));
        r.consequent = jr.at("consequent").is_string()
                           ? jr.at("consequent").get<std::string>()
                           : jr.at("consequent").dump();
        rs.rules.push_back(std::move(r));
    }
    if (rs.rules.empty()) throw std::runtime_error("rule JSON contains no rules");
    return rs;
}

// Loads rules from a file, dispatching on extension (.json vs DSL text).
inline RuleSet load_rules(const std::string& path) {
    const std::string text = csv::read_file(path);
    if (path.size() >= 5 && path.substr(path.size() - 5) == ".json")
        return rules_from_json(nlohmann::json::parse(text));
    return parse_rules(text);
}

}  // namespace featgraph
