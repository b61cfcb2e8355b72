#include "bundled.h"

#include <map>

using namespace std;

namespace wbp {

namespace {

const string delivery_features =
    "    features { H: bool; p: num; t: num; n: num; }\n";

const map<string, string> &bundled_texts() {
    static const map<string, string> texts = {
        // The clearing goal includes the empty gripper, so the put-down rule
        // must stay applicable once the tower is gone (no n>0 condition).
        {"clear_policy",
         "rules clear_policy {\n"
         "    features { H: bool; n: num; }\n"
         "    rule r1: -H, n>0 -> H, dec(n);\n"
         "    rule r2: H -> -H;\n"
         "}\n"},
        {"boxes_policy",
         "rules boxes_policy {\n"
         "    features { m: num; n: num; }\n"
         "    rule r1: m>0 -> dec(m);\n"
         "    rule r2: m=0, n>0 -> dec(n), ?m;\n"
         "}\n"},
        {"delivery_policy",
         "rules delivery_policy {\n" + delivery_features +
         "    rule r1: -H, p>0 -> dec(p), ?t;\n"
         "    rule r2: -H, p=0 -> H;\n"
         "    rule r3: H, t>0 -> dec(t);\n"
         "    rule r4: H, n>0, t=0 -> -H, dec(n), ?p;\n"
         "}\n"},
        {"grid_policy",
         "rules grid_policy {\n"
         "    features { d: num; }\n"
         "    rule r1: d>0 -> dec(d);\n"
         "}\n"},
        {"goal_count_sketch",
         "rules goal_count_sketch {\n"
         "    features { #g: num; }\n"
         "    rule g1: #g>0 -> dec(#g);\n"
         "}\n"},
        {"misplaced_sketch",
         "rules misplaced_sketch {\n"
         "    features { #m: num; }\n"
         "    rule m1: #m>0 -> dec(#m);\n"
         "}\n"},
        {"sigma0",
         "rules sigma0 {\n" + delivery_features + "}\n"},
        {"sigma1",
         "rules sigma1 {\n" + delivery_features +
         "    rule s1: H -> -H, ?p, ?t;\n"
         "}\n"},
        {"sigma2",
         "rules sigma2 {\n" + delivery_features +
         "    rule s2: -H -> H, ?p, ?t;\n"
         "}\n"},
        {"sigma3",
         "rules sigma3 {\n" + delivery_features +
         "    rule s1: H -> -H, ?p, ?t;\n"
         "    rule s2: -H -> H, ?p, ?t;\n"
         "}\n"},
        {"sigma4",
         "rules sigma4 {\n" + delivery_features +
         "    rule s4: n>0 -> dec(n), ?H, ?p, ?t;\n"
         "}\n"},
        {"sigma5",
         "rules sigma5 {\n" + delivery_features +
         "    rule s2: -H -> H, ?p, ?t;\n"
         "    rule s4: n>0 -> dec(n), ?H, ?p, ?t;\n"
         "}\n"},
        {"sigma6",
         "rules sigma6 {\n" + delivery_features +
         "    rule s6: -H, p>0 -> dec(p), ?t;\n"
         "}\n"},
        {"sigma7",
         "rules sigma7 {\n" + delivery_features +
         "    rule s7: H, t>0 -> dec(t), ?p;\n"
         "}\n"},
        {"sigma8",
         "rules sigma8 {\n" + delivery_features +
         "    rule s2: -H -> H, ?p, ?t;\n"
         "    rule s4: n>0 -> dec(n), ?H, ?p, ?t;\n"
         "    rule s6: -H, p>0 -> dec(p), ?t;\n"
         "    rule s7: H, t>0 -> dec(t), ?p;\n"
         "}\n"},
    };
    return texts;
}

}

vector<string> bundled_rule_names() {
    vector<string> names;
    for (const auto &[name, text] : bundled_texts())
        names.push_back(name);
    return names;
}

bool has_bundled_rules(const string &name) {
    return bundled_texts().count(name);
}

const string &bundled_rules_text(const string &name) {
    auto it = bundled_texts().find(name);
    if (it == bundled_texts().end())
        throw PlanningError("no bundled rules named '" + name + "'");
    return it->second;
}

RuleSet bundled_rules(const string &name) {
    RuleSet rs = parse_rules(bundled_rules_text(name));
    rs.intended_use = name.rfind("sigma", 0) == 0 || name.find("sketch") != string::npos
        ? RuleUse::sketch : RuleUse::policy;
    return rs;
}

}
