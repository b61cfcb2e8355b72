#ifndef DOMAINS_FEATURES_H
#define DOMAINS_FEATURES_H

#include "../core/feature.h"
#include "../rules/rules.h"

#include <string>
#include <vector>

namespace wbp {

class UnknownHook : public PlanningError {
public:
    explicit UnknownHook(const std::string &msg) : PlanningError(msg) {}
};

class ArityMismatch : public PlanningError {
public:
    explicit ArityMismatch(const std::string &msg) : PlanningError(msg) {}
};

/*
  Feature definitions:
    builtin     a named domain hook (H, n, m, p, t, d, #m, ...)
    count       number of true atoms pred(args) matching a pattern,
                '?' is a wildcard argument
    goal_count  number of unachieved goal atoms (#g)
*/
struct FeatureSpec {
    enum class Def { builtin, count, goal_count };
    std::string name;
    Def def = Def::builtin;
    std::string predicate;              // count only
    std::vector<std::string> pattern;   // count only

    static FeatureSpec builtin(const std::string &name) {
        return {name, Def::builtin, "", {}};
    }
    static FeatureSpec goal_counter(const std::string &name = "#g") {
        return {name, Def::goal_count, "", {}};
    }
    static FeatureSpec count(const std::string &name, const std::string &predicate,
                             const std::vector<std::string> &pattern) {
        return {name, Def::count, predicate, pattern};
    }
};

// Parses a comma-separated feature list such as "H,n" or
// "#g,count(on,(?,x))" into specs.
std::vector<FeatureSpec> parse_feature_specs(const std::string &text);

std::vector<Feature> resolve_features(const GroundProblem &problem,
                                      const std::vector<FeatureSpec> &specs);

// Resolves the features declared by a rule set against the problem's hooks
// and validates the declared kinds.
std::vector<Feature> bind_features(const GroundProblem &problem, const RuleSet &rs);

}

#endif
