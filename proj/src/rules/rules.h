#ifndef RULES_RULES_H
#define RULES_RULES_H

#include "../core/feature.h"

#include <optional>
#include <string>
#include <vector>

namespace wbp {

class ParseError : public PlanningError {
public:
    int line;
    ParseError(int line, const std::string &msg)
        : PlanningError("line " + std::to_string(line) + ": " + msg), line(line) {}
};

class KindError : public PlanningError {
public:
    explicit KindError(const std::string &msg) : PlanningError(msg) {}
};

class UnknownFeature : public PlanningError {
public:
    explicit UnknownFeature(const std::string &msg) : PlanningError(msg) {}
};

enum class CondTest {
    is_true,   // boolean feature p
    is_false,  // -p
    eq_zero,   // n=0
    gt_zero,   // n>0
};

enum class EffectChange {
    set_true,      // p
    set_false,     // -p
    bool_unknown,  // ?p
    dec,           // dec(n)
    inc,           // inc(n)
    num_unknown,   // ?n
};

struct Condition {
    int feature;
    CondTest test;
    bool operator==(const Condition &) const = default;
};

struct Effect {
    int feature;
    EffectChange change;
    bool operator==(const Effect &) const = default;
};

/*
  Conditions and effects are kept sorted by feature index, at most one of
  each per feature. Rules with a dec(n) effect carry the condition n>0,
  materialized at parse time.
*/
struct Rule {
    std::string id;
    std::vector<Condition> conditions;
    std::vector<Effect> effects;

    const Condition *condition_on(int feature) const;
    const Effect *effect_on(int feature) const;
    bool operator==(const Rule &) const = default;
};

struct FeatureDecl {
    std::string name;
    FeatureKind kind;
    bool operator==(const FeatureDecl &) const = default;
};

enum class RuleUse {
    policy,
    sketch,
};

struct RuleSet {
    std::string name;
    std::vector<FeatureDecl> features;
    std::vector<Rule> rules;
    // Annotation only; the rule syntax is shared.
    RuleUse intended_use = RuleUse::policy;

    int feature_index(const std::string &name) const;  // -1 if absent
    bool operator==(const RuleSet &other) const {
        return name == other.name && features == other.features && rules == other.rules;
    }
};

RuleSet parse_rules(const std::string &text);
std::string emit_rules(const RuleSet &rs);

// True iff condition c holds at the full feature valuation v.
bool condition_holds(const Condition &c, const FeatureValuation &v);
bool conditions_hold(const Rule &rule, const FeatureValuation &v);

// True iff the change from v to v' satisfies the rule's effects, including
// the frame requirement that unmentioned features keep their value.
// num_features is the length of the valuations.
bool effects_satisfied(const Rule &rule, int num_features,
                       const FeatureValuation &v, const FeatureValuation &v2);

// C true in f and the value change from f to f' compatible with E.
bool pair_compatible(const Rule &rule, int num_features,
                     const FeatureValuation &f, const FeatureValuation &f2);

// Variants over boolean projections b(f) where bit i is "p" or "n=0".
// Used for policy graphs: dec leaves the bit free, inc forces it to 0,
// unmentioned features keep their bit.
bool condition_holds_bool(const Condition &c, const std::vector<FeatureDecl> &features,
                          BoolValuation b);
bool conditions_hold_bool(const Rule &rule, const std::vector<FeatureDecl> &features,
                          BoolValuation b);
bool effects_compatible_bool(const Rule &rule, const std::vector<FeatureDecl> &features,
                             BoolValuation b, BoolValuation b2);

// A single DSL condition string such as "n=0" or "-H,p=0"; used for goal
// valuation declarations. Returns the matching boolean valuations.
std::vector<BoolValuation> bool_valuations_matching(
    const std::vector<FeatureDecl> &features, const std::string &cond_text);

std::string format_effects(const RuleSet &rs, const Rule &rule);

}

#endif
