#include <doctest.h>

#include "domains/features.h"
#include "domains/generators.h"
#include "policy/policy.h"
#include "rules/bundled.h"
#include "serialize/serialize.h"

#include <map>
#include <set>

using namespace std;
using namespace wbp;

namespace {

vector<BoolValuation> n_zero_goals(const RuleSet &rs) {
    return bool_valuations_matching(rs.features, "n=0");
}

// Every episode must end at a closest qualifying state; cross-check with a
// plain breadth-first oracle per episode.
void check_episodes_shortest(const GroundProblem &problem,
                             const vector<Feature> &features, const SiwResult &siw,
                             const function<bool(const FeatureValuation &,
                                                 const FeatureValuation &)> &qualifies) {
    for (const auto &episode : siw.episodes) {
        FeatureValuation v = eval_features(features, episode.start);
        GoalPredicate target = [&](const State &s) {
            return problem.is_goal(s) || qualifies(v, eval_features(features, s));
        };
        ReachabilityTable table = bfs_reachable(problem, episode.start, target,
                                                2'000'000, true);
        REQUIRE(table.goal_cost.has_value());
        CHECK(*table.goal_cost == episode.plan_length);
    }
}

}

TEST_CASE("precedence oracles") {
    PrecedenceOracle lex = PrecedenceOracle::lexicographic({1, 0});
    CHECK(lex.precedes({5, 1}, {0, 2}));    // second feature first
    CHECK(lex.precedes({3, 2}, {5, 2}));    // tie broken by the first
    CHECK(!lex.precedes({5, 2}, {5, 2}));   // irreflexive
    CHECK(!lex.precedes({0, 3}, {9, 2}));
    CHECK(lex.tests() == 4);

    PrecedenceOracle empty = PrecedenceOracle::lexicographic({});
    CHECK(!empty.precedes({1}, {2}));

    PrecedenceOracle counter = PrecedenceOracle::goal_counter(0);
    CHECK(counter.precedes({1}, {2}));
    CHECK(!counter.precedes({2}, {2}));
}

TEST_CASE("serialized IW on visitall with the goal counter") {
    GroundProblem problem = generate({"visitall", {{"w", 3}, {"h", 3}}});
    auto features = resolve_features(problem, {FeatureSpec::goal_counter()});
    PrecedenceOracle order = PrecedenceOracle::goal_counter(0);
    SiwResult siw = siw_phi(problem, features, order, 2);
    REQUIRE(siw.solved);
    CHECK(siw.max_episode_width() <= 1);
    CHECK(problem.is_goal(replay_plan(problem, problem.init, siw.plan)));
    CHECK(siw.order_tests > 0);
    check_episodes_shortest(problem, features, siw,
                            [&](const FeatureValuation &v, const FeatureValuation &v2) {
                                return order.precedes(v2, v);
                            });
}

TEST_CASE("serialized IW on blocks with the misplaced counter") {
    for (DomainSpec spec : vector<DomainSpec>{
             {"blocks_on", {{"blocks", 3}, {"seed", 1}}},
             {"blocks_on", {{"blocks", 4}, {"seed", 3}}},
             {"blocks_on", {{"blocks", 5}, {"seed", 2}}},
             {"blocks_on", {{"blocks", 5}, {"buried", 1}}}}) {
        GroundProblem problem = generate(spec);
        auto features = resolve_features(problem, {FeatureSpec::builtin("#m")});
        PrecedenceOracle order = PrecedenceOracle::goal_counter(0);
        SiwResult siw = siw_phi(problem, features, order, 2);
        REQUIRE_MESSAGE(siw.solved, problem.name);
        CHECK(siw.max_episode_width() == 2);
        CHECK(problem.is_goal(replay_plan(problem, problem.init, siw.plan)));
        check_episodes_shortest(problem, features, siw,
                                [&](const FeatureValuation &v, const FeatureValuation &v2) {
                                    return order.precedes(v2, v);
                                });
    }
}

TEST_CASE("the goal counter cannot serialize the buried tower") {
    GroundProblem problem = generate({"blocks_on", {{"blocks", 5}, {"buried", 1}}});
    auto features = resolve_features(problem, {FeatureSpec::goal_counter()});
    PrecedenceOracle order = PrecedenceOracle::goal_counter(0);
    SiwResult siw = siw_phi(problem, features, order, 2);
    CHECK(!siw.solved);
    CHECK(siw.stuck_state.has_value());
    CHECK(serialized_width(problem, features, order, 2).not_within());
}

TEST_CASE("goal at init yields an empty plan and no episodes") {
    GroundProblem problem = generate({"grid", {{"w", 1}, {"h", 1}}});
    auto features = resolve_features(problem, {FeatureSpec::goal_counter()});
    PrecedenceOracle order = PrecedenceOracle::goal_counter(0);
    SiwResult siw = siw_phi(problem, features, order, 2);
    CHECK(siw.solved);
    CHECK(siw.plan.empty());
    CHECK(siw.episodes.empty());
    CHECK(decompose(problem, features, order).empty());
    CHECK(serialized_width(problem, features, order, 2) == WidthResult{0, 2});
}

TEST_CASE("the box decomposition steps through the lexicographic order") {
    GroundProblem problem = generate(
        {"boxes", {{"boxes", 2}, {"marbles", 1}, {"encoding", 4}}});
    auto features = resolve_features(
        problem, {FeatureSpec::builtin("m"), FeatureSpec::builtin("n")});
    // Order on (n, m): features are [m, n], so indices are {1, 0}.
    PrecedenceOracle order = PrecedenceOracle::lexicographic({1, 0});
    vector<State> members = decompose(problem, features, order);
    // Symmetric boxes tie, so each step below the top contributes two
    // member states with the same valuation.
    CHECK(members.size() == 7);
    set<pair<int, int>> valuations;  // (n, m)
    for (const State &s : members) {
        FeatureValuation v = eval_features(features, s);
        valuations.insert({v[1], v[0]});
    }
    CHECK(valuations == set<pair<int, int>>{{2, 1}, {2, 0}, {1, 1}, {1, 0}});
    // Each subproblem is one removal away from an improvement.
    CHECK(serialized_width(problem, features, order, 2) == WidthResult{0, 2});
}

TEST_CASE("serialized width of visitall instances") {
    map<int, WidthResult> expected = {
        {2, {0, 2}}, {3, {1, 2}}, {4, {1, 2}},
    };
    for (const auto &[w, want] : expected) {
        GroundProblem problem = generate({"visitall", {{"w", w}, {"h", w}}});
        auto features = resolve_features(problem, {FeatureSpec::goal_counter()});
        PrecedenceOracle order = PrecedenceOracle::goal_counter(0);
        CHECK(serialized_width(problem, features, order, 2) == want);
    }
}

TEST_CASE("the empty order reduces serialized width to plain width") {
    for (DomainSpec spec : vector<DomainSpec>{
             {"blocks_clear", {{"blocks", 2}}},
             {"blocks_on", {{"height", 2}}},
             {"grid", {{"w", 3}, {"h", 2}}}}) {
        GroundProblem problem = generate(spec);
        auto features = resolve_features(problem, {FeatureSpec::goal_counter()});
        PrecedenceOracle empty = PrecedenceOracle::lexicographic({});
        WidthResult serialized = serialized_width(problem, features, empty, 3);
        WidthResult exact = exact_width(problem, 3);
        CHECK_MESSAGE(serialized == exact, problem.name);
    }
}

TEST_CASE("the delivery policy induces a width-zero serialization") {
    for (DomainSpec spec : vector<DomainSpec>{
             {"delivery", {{"w", 3}, {"h", 3}, {"packages", 1}}},
             {"delivery", {{"w", 4}, {"h", 4}, {"packages", 1}}},
             {"delivery", {{"w", 3}, {"h", 3}, {"packages", 2}}},
             {"delivery", {{"w", 4}, {"h", 4}, {"packages", 2}}}}) {
        GroundProblem problem = generate(spec);
        PolicyContext ctx = make_policy_context(problem, bundled_rules("delivery_policy"));
        PrecedenceOracle order = closure_order(problem, ctx);
        WidthResult zero{0, 2};
        CHECK_MESSAGE(serialized_width(problem, ctx.features, order, 2) == zero,
                      problem.name);
    }
}

TEST_CASE("sketch widths over the one-package delivery class") {
    map<string, WidthResult> expected = {
        {"sigma0", {2, 2}}, {"sigma1", {2, 2}}, {"sigma2", {1, 2}},
        {"sigma4", {2, 2}}, {"sigma5", {1, 2}}, {"sigma6", {2, 2}},
        {"sigma7", {2, 2}}, {"sigma8", {0, 2}},
    };
    for (int w : {2, 3}) {
        GroundProblem problem = generate({"delivery", {{"w", w}, {"h", w}, {"packages", 1}}});
        map<string, WidthResult> measured;
        for (const auto &[name, want] : expected) {
            PolicyContext ctx = make_policy_context(problem, bundled_rules(name));
            measured[name] = sketch_width(ctx, 2);
            if (w == 3)
                CHECK_MESSAGE(measured[name] == want, name);
            else
                CHECK_MESSAGE(!measured[name].not_within(), name);
        }
    }
}

TEST_CASE("sketch widths over the two-package delivery class") {
    GroundProblem problem = generate({"delivery", {{"w", 3}, {"h", 3}, {"packages", 2}}});
    map<string, WidthResult> expected = {
        {"sigma0", {nullopt, 2}}, {"sigma1", {nullopt, 2}}, {"sigma2", {nullopt, 2}},
        {"sigma4", {2, 2}}, {"sigma5", {1, 2}},
        {"sigma6", {nullopt, 2}}, {"sigma7", {nullopt, 2}}, {"sigma8", {0, 2}},
    };
    for (const auto &[name, want] : expected) {
        PolicyContext ctx = make_policy_context(problem, bundled_rules(name));
        CHECK_MESSAGE(sketch_width(ctx, 2) == want, name);
    }
}

TEST_CASE("fast sketch width is a lower bound") {
    GroundProblem problem = generate({"delivery", {{"w", 3}, {"h", 3}, {"packages", 1}}});
    for (const string &name : {string("sigma2"), string("sigma5"), string("sigma8")}) {
        PolicyContext ctx = make_policy_context(problem, bundled_rules(name));
        WidthResult fast = sketch_width(ctx, 2, /*fast_mode=*/true);
        WidthResult full = sketch_width(ctx, 2);
        REQUIRE(!full.not_within());
        REQUIRE(!fast.not_within());
        CHECK(*fast.width <= *full.width);
    }
}

TEST_CASE("sketch-driven serialized IW") {
    GroundProblem one = generate({"delivery", {{"w", 3}, {"h", 3}, {"packages", 1}}});

    PolicyContext sigma5 = make_policy_context(one, bundled_rules("sigma5"));
    SiwResult siw = siw_r(sigma5, n_zero_goals(sigma5.rules), 2);
    REQUIRE(siw.solved);
    CHECK(siw.max_episode_width() <= 1);
    CHECK(one.is_goal(replay_plan(one, one.init, siw.plan)));
    for (const auto &episode : siw.episodes)
        if (!one.is_goal(episode.achieved))
            CHECK(episode.rule_fired.has_value());

    // The full-policy sketch moves one step per episode.
    GroundProblem two = generate({"delivery", {{"w", 3}, {"h", 3}, {"packages", 2}}});
    PolicyContext sigma8 = make_policy_context(two, bundled_rules("sigma8"));
    SiwResult stepwise = siw_r(sigma8, n_zero_goals(sigma8.rules), 2);
    REQUIRE(stepwise.solved);
    for (const auto &episode : stepwise.episodes)
        CHECK(episode.plan_length == 1);

    // The empty sketch solves the whole problem in a single episode.
    PolicyContext sigma0 = make_policy_context(one, bundled_rules("sigma0"));
    SiwResult whole = siw_r(sigma0, n_zero_goals(sigma0.rules), 2);
    REQUIRE(whole.solved);
    CHECK(whole.episodes.size() == 1);
    CHECK(whole.max_episode_width() == 2);
}

TEST_CASE("ill-formed sketches are rejected by the sketch solver") {
    GroundProblem problem = generate({"delivery", {{"w", 2}, {"h", 2}, {"packages", 1}}});
    PolicyContext sigma3 = make_policy_context(problem, bundled_rules("sigma3"));
    CHECK_THROWS_AS(siw_r(sigma3, n_zero_goals(sigma3.rules), 2), IllFormedSketch);
}

TEST_CASE("sketch episodes end at closest rule-compatible states") {
    GroundProblem problem = generate({"delivery", {{"w", 3}, {"h", 3}, {"packages", 2}}});
    PolicyContext sigma5 = make_policy_context(problem, bundled_rules("sigma5"));
    SiwResult siw = siw_r(sigma5, n_zero_goals(sigma5.rules), 2);
    REQUIRE(siw.solved);
    int nf = int(sigma5.features.size());
    check_episodes_shortest(problem, sigma5.features, siw,
                            [&](const FeatureValuation &v, const FeatureValuation &v2) {
                                for (const Rule &rule : sigma5.rules.rules)
                                    if (pair_compatible(rule, nf, v, v2))
                                        return true;
                                return false;
                            });
}

TEST_CASE("the induced serialization respects the sketch width bound") {
    // Width of the closure-induced serialization is bounded by the sketch
    // width, instance by instance.
    for (int packages : {1, 2}) {
        GroundProblem problem = generate(
            {"delivery", {{"w", 3}, {"h", 3}, {"packages", packages}}});
        for (const string &name :
             {string("sigma2"), string("sigma4"), string("sigma5"), string("sigma8")}) {
            PolicyContext ctx = make_policy_context(problem, bundled_rules(name));
            WidthResult sketch = sketch_width(ctx, 2);
            if (sketch.not_within())
                continue;
            PrecedenceOracle order = closure_order(problem, ctx);
            WidthResult serialized = serialized_width(problem, ctx.features, order, 2);
            REQUIRE(!serialized.not_within());
            CHECK_MESSAGE(*serialized.width <= *sketch.width, name);
        }
    }
}
