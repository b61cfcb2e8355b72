#include <doctest.h>

#include "core/bitset.h"
#include "core/feature.h"
#include "core/problem.h"
#include "domains/generators.h"

#include <random>
#include <set>

using namespace std;
using namespace wbp;

TEST_CASE("bitset basics") {
    Bitset a(130), b(130);
    a.set(0);
    a.set(64);
    a.set(129);
    CHECK(a.count() == 3);
    CHECK(a.test(64));
    CHECK(!a.test(63));
    b.set(64);
    CHECK(a.contains(b));
    CHECK(!b.contains(a));
    CHECK(a.intersects(b));
    b.set(5);
    CHECK(!a.contains(b));
    a |= b;
    CHECK(a.test(5));
    a.subtract(b);
    CHECK(!a.test(5));
    CHECK(!a.test(64));
    CHECK(a.test(129));
    CHECK(a.to_indices() == vector<int>{0, 129});
}

TEST_CASE("successors on the one-block clearing instance") {
    GroundProblem problem = generate({"blocks_clear", {{"blocks", 1}}});
    auto succ = problem.successors(problem.init);
    // Only unstack(b1,x) applies initially.
    REQUIRE(succ.size() == 1);
    CHECK(problem.actions[succ[0].first].name == "unstack(b1,x)");
    const State &after = succ[0].second;
    CHECK(after.test(problem.universe.id_of("hold(b1)")));
    CHECK(after.test(problem.universe.id_of("clear(x)")));
    CHECK(!after.test(problem.universe.id_of("armempty")));
}

TEST_CASE("is_goal") {
    GroundProblem grid = generate({"grid", {{"w", 1}, {"h", 1}}});
    CHECK(grid.is_goal(grid.init));

    GroundProblem clearing = generate({"blocks_clear", {{"blocks", 2}}});
    CHECK(!clearing.is_goal(clearing.init));
}

TEST_CASE("grid 2x2 successors from the corner") {
    GroundProblem problem = generate({"grid", {{"w", 2}, {"h", 2}}});
    auto succ = problem.successors(problem.init);
    CHECK(succ.size() == 2);  // one step right, one step up
}

TEST_CASE("successor determinism") {
    GroundProblem problem = generate({"delivery", {{"w", 3}, {"h", 3}, {"packages", 2}}});
    auto a = problem.successors(problem.init);
    auto b = problem.successors(problem.init);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].first == b[i].first);
        CHECK(a[i].second == b[i].second);
    }
}

TEST_CASE("frame property on random states") {
    GroundProblem problem = generate({"blocks_clear", {{"blocks", 3}}});
    mt19937 rng(1234);
    int n = problem.num_atoms();
    for (int round = 0; round < 200; ++round) {
        State s(n);
        for (int i = 0; i < n; ++i)
            if (rng() % 2)
                s.set(i);
        const GroundAction &action = problem.actions[rng() % problem.actions.size()];
        State succ = problem.apply(action, s);
        for (int i = 0; i < n; ++i) {
            if (action.add_mask.test(i))
                CHECK(succ.test(i));
            else if (action.del_mask.test(i))
                CHECK(!succ.test(i));
            else
                CHECK(succ.test(i) == s.test(i));
        }
    }
}

TEST_CASE("add and del disjointness is enforced") {
    GroundProblem problem;
    AtomId a = problem.universe.add("a");
    problem.init = Bitset(1);
    problem.actions.push_back({"broken", {}, {a}, {a}, {}, {}, {}});
    CHECK_THROWS_AS(problem.finalize(), PlanningError);
}

TEST_CASE("static atoms never change along reachable transitions") {
    GroundProblem problem = generate({"delivery", {{"w", 3}, {"h", 2}}});
    AtomId target = -1;
    for (int i = 0; i < problem.num_atoms(); ++i)
        if (problem.universe.name_of(i).rfind("target(", 0) == 0)
            target = i;
    REQUIRE(target >= 0);
    CHECK(problem.static_atoms.test(target));

    // Walk a few random trajectories and watch the static atoms.
    mt19937 rng(7);
    for (int round = 0; round < 20; ++round) {
        State s = problem.init;
        for (int step = 0; step < 30; ++step) {
            auto succ = problem.successors(s);
            if (succ.empty())
                break;
            s = succ[rng() % succ.size()].second;
            State statics = s;
            statics &= problem.static_atoms;
            State expected = problem.init;
            expected &= problem.static_atoms;
            CHECK(statics == expected);
        }
    }
}

TEST_CASE("boolean projection encodes p and n=0") {
    vector<Feature> features = {
        {"H", FeatureKind::boolean, [](const State &) {return 1;}},
        {"n", FeatureKind::numerical, [](const State &) {return 3;}},
    };
    State dummy(1);
    FeatureValuation v = eval_features(features, dummy);
    CHECK(v == FeatureValuation{1, 3});
    BoolValuation b = boolean_projection(features, v);
    CHECK(((b >> 0) & 1) == 1);  // H true
    CHECK(((b >> 1) & 1) == 0);  // n=0 false
    CHECK(format_bool_valuation(features, b) == "H,n>0");
}

TEST_CASE("an empty feature list evaluates to an empty valuation") {
    GroundProblem problem = generate({"grid", {{"w", 2}, {"h", 2}}});
    CHECK(eval_features({}, problem.init).empty());
}
