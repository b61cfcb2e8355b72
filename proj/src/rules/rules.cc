#include "rules.h"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <sstream>

using namespace std;

namespace wbp {

const Condition *Rule::condition_on(int feature) const {
    for (const Condition &c : conditions)
        if (c.feature == feature)
            return &c;
    return nullptr;
}

const Effect *Rule::effect_on(int feature) const {
    for (const Effect &e : effects)
        if (e.feature == feature)
            return &e;
    return nullptr;
}

int RuleSet::feature_index(const string &name) const {
    for (size_t i = 0; i < features.size(); ++i)
        if (features[i].name == name)
            return int(i);
    return -1;
}

namespace {

struct Token {
    string text;
    int line;
};

class Lexer {
    vector<Token> tokens;
    size_t pos = 0;

public:
    explicit Lexer(const string &text) {
        int line = 1;
        size_t i = 0;
        auto is_name_char = [](char c) {
            return isalnum(uint8_t(c)) || c == '_' || c == '#';
        };
        while (i < text.size()) {
            char c = text[i];
            if (c == '\n') {
                ++line;
                ++i;
            } else if (isspace(uint8_t(c))) {
                ++i;
            } else if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
                tokens.push_back({"->", line});
                i += 2;
            } else if (is_name_char(c)) {
                size_t j = i;
                while (j < text.size() && is_name_char(text[j]))
                    ++j;
                tokens.push_back({text.substr(i, j - i), line});
                i = j;
            } else {
                tokens.push_back({string(1, c), line});
                ++i;
            }
        }
    }

    bool at_end() const {
        return pos >= tokens.size();
    }
    int line() const {
        return at_end() ? (tokens.empty() ? 1 : tokens.back().line) : tokens[pos].line;
    }
    const string &peek() const {
        static const string empty;
        return at_end() ? empty : tokens[pos].text;
    }
    string next() {
        if (at_end())
            throw ParseError(line(), "unexpected end of input");
        return tokens[pos++].text;
    }
    void expect(const string &token) {
        string got = next();
        if (got != token)
            throw ParseError(line(), "expected '" + token + "', got '" + got + "'");
    }
    bool accept(const string &token) {
        if (!at_end() && peek() == token) {
            ++pos;
            return true;
        }
        return false;
    }
};

class RuleParser {
    Lexer lex;
    RuleSet rs;

    int feature_of(const string &name) {
        int idx = rs.feature_index(name);
        if (idx < 0)
            throw UnknownFeature("line " + to_string(lex.line()) +
                                 ": unknown feature '" + name + "'");
        return idx;
    }

    FeatureKind kind_of(int feature) const {
        return rs.features[feature].kind;
    }

    Condition parse_condition() {
        if (lex.accept("-")) {
            int f = feature_of(lex.next());
            if (kind_of(f) != FeatureKind::boolean)
                throw KindError("'-" + rs.features[f].name + "': negation is for boolean features");
            return {f, CondTest::is_false};
        }
        int f = feature_of(lex.next());
        if (lex.accept("=")) {
            lex.expect("0");
            if (kind_of(f) != FeatureKind::numerical)
                throw KindError("'" + rs.features[f].name + "=0' is for numerical features");
            return {f, CondTest::eq_zero};
        }
        if (lex.accept(">")) {
            lex.expect("0");
            if (kind_of(f) != FeatureKind::numerical)
                throw KindError("'" + rs.features[f].name + ">0' is for numerical features");
            return {f, CondTest::gt_zero};
        }
        if (kind_of(f) != FeatureKind::boolean)
            throw KindError("numerical feature '" + rs.features[f].name +
                            "' needs =0 or >0 in conditions");
        return {f, CondTest::is_true};
    }

    Effect parse_effect() {
        if (lex.accept("-")) {
            int f = feature_of(lex.next());
            if (kind_of(f) != FeatureKind::boolean)
                throw KindError("'-" + rs.features[f].name + "': clearing is for boolean features");
            return {f, EffectChange::set_false};
        }
        if (lex.accept("?")) {
            int f = feature_of(lex.next());
            return {f, kind_of(f) == FeatureKind::boolean
                           ? EffectChange::bool_unknown : EffectChange::num_unknown};
        }
        string tok = lex.next();
        if (tok == "dec" || tok == "inc") {
            lex.expect("(");
            int f = feature_of(lex.next());
            lex.expect(")");
            if (kind_of(f) != FeatureKind::numerical)
                throw KindError("'" + tok + "' is for numerical features");
            return {f, tok == "dec" ? EffectChange::dec : EffectChange::inc};
        }
        int f = feature_of(tok);
        if (kind_of(f) != FeatureKind::boolean)
            throw KindError("numerical feature '" + rs.features[f].name +
                            "' needs dec()/inc()/? in effects");
        return {f, EffectChange::set_true};
    }

    Rule parse_rule() {
        Rule rule;
        rule.id = lex.next();
        lex.expect(":");
        if (!lex.accept("true")) {
            do {
                Condition c = parse_condition();
                if (rule.condition_on(c.feature))
                    throw ParseError(lex.line(), "rule " + rule.id +
                                     ": duplicate condition on feature '" +
                                     rs.features[c.feature].name + "'");
                rule.conditions.push_back(c);
            } while (lex.accept(","));
        }
        lex.expect("->");
        do {
            Effect e = parse_effect();
            if (rule.effect_on(e.feature))
                throw ParseError(lex.line(), "rule " + rule.id +
                                 ": duplicate effect on feature '" +
                                 rs.features[e.feature].name + "'");
            rule.effects.push_back(e);
        } while (lex.accept(","));
        lex.expect(";");

        // A decrement entails a positive value before the transition.
        for (const Effect &e : rule.effects) {
            if (e.change == EffectChange::dec) {
                const Condition *c = rule.condition_on(e.feature);
                if (c && c->test == CondTest::eq_zero)
                    throw ParseError(lex.line(), "rule " + rule.id + ": dec(" +
                                     rs.features[e.feature].name + ") contradicts =0 condition");
                if (!c)
                    rule.conditions.push_back({e.feature, CondTest::gt_zero});
            }
        }

        auto by_feature = [](const auto &a, const auto &b) {
            return a.feature < b.feature;
        };
        sort(rule.conditions.begin(), rule.conditions.end(), by_feature);
        sort(rule.effects.begin(), rule.effects.end(), by_feature);
        return rule;
    }

public:
    explicit RuleParser(const string &text) : lex(text) {}

    RuleSet parse() {
        lex.expect("rules");
        rs.name = lex.next();
        lex.expect("{");
        lex.expect("features");
        lex.expect("{");
        while (!lex.accept("}")) {
            FeatureDecl decl;
            decl.name = lex.next();
            lex.expect(":");
            string kind = lex.next();
            if (kind == "bool")
                decl.kind = FeatureKind::boolean;
            else if (kind == "num")
                decl.kind = FeatureKind::numerical;
            else
                throw ParseError(lex.line(), "expected 'bool' or 'num', got '" + kind + "'");
            lex.expect(";");
            if (rs.feature_index(decl.name) >= 0)
                throw ParseError(lex.line(), "duplicate feature '" + decl.name + "'");
            rs.features.push_back(decl);
        }
        while (!lex.accept("}")) {
            lex.expect("rule");
            Rule rule = parse_rule();
            for (const Rule &existing : rs.rules)
                if (existing.id == rule.id)
                    throw ParseError(lex.line(), "duplicate rule id '" + rule.id + "'");
            rs.rules.push_back(rule);
        }
        if (!lex.at_end())
            throw ParseError(lex.line(), "trailing input after closing '}'");
        return rs;
    }
};

}

RuleSet parse_rules(const string &text) {
    return RuleParser(text).parse();
}

static string condition_text(const RuleSet &rs, const Condition &c) {
    const string &name = rs.features[c.feature].name;
    switch (c.test) {
    case CondTest::is_true: return name;
    case CondTest::is_false: return "-" + name;
    case CondTest::eq_zero: return name + "=0";
    case CondTest::gt_zero: return name + ">0";
    }
    return {};
}

static string effect_text(const RuleSet &rs, const Effect &e) {
    const string &name = rs.features[e.feature].name;
    switch (e.change) {
    case EffectChange::set_true: return name;
    case EffectChange::set_false: return "-" + name;
    case EffectChange::bool_unknown: return "?" + name;
    case EffectChange::dec: return "dec(" + name + ")";
    case EffectChange::inc: return "inc(" + name + ")";
    case EffectChange::num_unknown: return "?" + name;
    }
    return {};
}

string format_effects(const RuleSet &rs, const Rule &rule) {
    string result;
    for (size_t i = 0; i < rule.effects.size(); ++i) {
        if (i > 0)
            result += ", ";
        result += effect_text(rs, rule.effects[i]);
    }
    return result;
}

string emit_rules(const RuleSet &rs) {
    ostringstream out;
    out << "rules " << rs.name << " {\n";
    out << "    features {";
    for (const FeatureDecl &decl : rs.features)
        out << " " << decl.name << ": "
            << (decl.kind == FeatureKind::boolean ? "bool" : "num") << ";";
    out << " }\n";
    for (const Rule &rule : rs.rules) {
        out << "    rule " << rule.id << ": ";
        if (rule.conditions.empty()) {
            out << "true";
        } else {
            for (size_t i = 0; i < rule.conditions.size(); ++i) {
                if (i > 0)
                    out << ", ";
                out << condition_text(rs, rule.conditions[i]);
            }
        }
        out << " -> ";
        for (size_t i = 0; i < rule.effects.size(); ++i) {
            if (i > 0)
                out << ", ";
            out << effect_text(rs, rule.effects[i]);
        }
        out << ";\n";
    }
    out << "}\n";
    return out.str();
}

bool condition_holds(const Condition &c, const FeatureValuation &v) {
    switch (c.test) {
    case CondTest::is_true: return v[c.feature] != 0;
    case CondTest::is_false: return v[c.feature] == 0;
    case CondTest::eq_zero: return v[c.feature] == 0;
    case CondTest::gt_zero: return v[c.feature] > 0;
    }
    return false;
}

bool conditions_hold(const Rule &rule, const FeatureValuation &v) {
    for (const Condition &c : rule.conditions)
        if (!condition_holds(c, v))
            return false;
    return true;
}

bool effects_satisfied(const Rule &rule, int num_features,
                       const FeatureValuation &v, const FeatureValuation &v2) {
    for (int f = 0; f < num_features; ++f) {
        const Effect *e = rule.effect_on(f);
        if (!e) {
            if (v[f] != v2[f])
                return false;
            continue;
        }
        switch (e->change) {
        case EffectChange::set_true:
            if (v2[f] == 0)
                return false;
            break;
        case EffectChange::set_false:
            if (v2[f] != 0)
                return false;
            break;
        case EffectChange::dec:
            if (v2[f] >= v[f])
                return false;
            break;
        case EffectChange::inc:
            if (v2[f] <= v[f])
                return false;
            break;
        case EffectChange::bool_unknown:
        case EffectChange::num_unknown:
            break;
        }
    }
    return true;
}

bool pair_compatible(const Rule &rule, int num_features,
                     const FeatureValuation &f, const FeatureValuation &f2) {
    return conditions_hold(rule, f) && effects_satisfied(rule, num_features, f, f2);
}

static bool bit_of(BoolValuation b, int feature) {
    return (b >> feature) & 1;
}

bool condition_holds_bool(const Condition &c, const vector<FeatureDecl> &,
                          BoolValuation b) {
    bool bit = bit_of(b, c.feature);
    switch (c.test) {
    case CondTest::is_true: return bit;
    case CondTest::is_false: return !bit;
    case CondTest::eq_zero: return bit;   // bit encodes n=0
    case CondTest::gt_zero: return !bit;
    }
    return false;
}

bool conditions_hold_bool(const Rule &rule, const vector<FeatureDecl> &features,
                          BoolValuation b) {
    for (const Condition &c : rule.conditions)
        if (!condition_holds_bool(c, features, b))
            return false;
    return true;
}

bool effects_compatible_bool(const Rule &rule, const vector<FeatureDecl> &features,
                             BoolValuation b, BoolValuation b2) {
    for (int f = 0; f < int(features.size()); ++f) {
        const Effect *e = rule.effect_on(f);
        if (!e) {
            if (bit_of(b, f) != bit_of(b2, f))
                return false;
            continue;
        }
        switch (e->change) {
        case EffectChange::set_true:
            if (!bit_of(b2, f))
                return false;
            break;
        case EffectChange::set_false:
            if (bit_of(b2, f))
                return false;
            break;
        case EffectChange::inc:
            // After an increment n=0 is false.
            if (bit_of(b2, f))
                return false;
            break;
        case EffectChange::dec:
            // After a decrement n=0 can be either true or false.
        case EffectChange::bool_unknown:
        case EffectChange::num_unknown:
            break;
        }
    }
    return true;
}

vector<BoolValuation> bool_valuations_matching(
    const vector<FeatureDecl> &features, const string &cond_text) {
    // Reuse the rule parser on a synthetic one-rule set. The dummy effect on
    // the first feature is ignored.
    if (features.empty())
        throw PlanningError("goal condition needs at least one feature");
    string dummy_effect = features[0].kind == FeatureKind::boolean
        ? "?" + features[0].name : "?" + features[0].name;
    string text = "rules goal_condition {\nfeatures {";
    for (const FeatureDecl &decl : features)
        text += " " + decl.name + ": " +
            (decl.kind == FeatureKind::boolean ? "bool" : "num") + ";";
    text += " }\nrule g: " + cond_text + " -> " + dummy_effect + ";\n}\n";
    RuleSet rs = parse_rules(text);
    const Rule &rule = rs.rules.at(0);
    vector<BoolValuation> result;
    for (BoolValuation b = 0; b < (BoolValuation(1) << features.size()); ++b)
        if (conditions_hold_bool(rule, features, b))
            result.push_back(b);
    return result;
}

}
