#include "policy.h"

#include <algorithm>
#include <map>

using namespace std;

namespace wbp {

namespace {

string describe_state(const GroundProblem &problem, const State &s) {
    string text;
    s.for_each_set([&](int id) {
        if (!text.empty())
            text += " ";
        text += problem.universe.name_of(id);
    });
    return "{" + text + "}";
}

}

SeparationResult check_goal_separation(const vector<const GroundProblem *> &problems,
                                       const vector<vector<Feature>> &features,
                                       long cap) {
    SeparationResult result;
    result.ok = true;
    vector<ReachabilityTable> tables;
    for (const GroundProblem *problem : problems)
        tables.push_back(bfs_reachable(*problem, problem->init, problem_goal(*problem), cap));

    for (size_t p = 0; p < problems.size(); ++p) {
        for (int i = 0; i < tables[p].num_states(); ++i) {
            if (problems[p]->is_goal(tables[p].states[i])) {
                FeatureValuation v = eval_features(features[p], tables[p].states[i]);
                result.kappa.insert(boolean_projection(features[p], v));
            }
        }
    }
    for (size_t p = 0; p < problems.size(); ++p) {
        for (int i = 0; i < tables[p].num_states(); ++i) {
            const State &s = tables[p].states[i];
            if (problems[p]->is_goal(s))
                continue;
            FeatureValuation v = eval_features(features[p], s);
            if (result.kappa.count(boolean_projection(features[p], v))) {
                result.ok = false;
                result.counterexample = problems[p]->name + ": non-goal state " +
                    describe_state(*problems[p], s) + " has a goal valuation";
                return result;
            }
        }
    }
    return result;
}

VerifierResult check_markovian(const PolicyContext &ctx, long cap) {
    const GroundProblem &problem = *ctx.problem;
    ReachabilityTable table = bfs_reachable(problem, problem.init,
                                            problem_goal(problem), cap);
    int num_features = int(ctx.features.size());

    vector<FeatureValuation> vals(table.num_states());
    map<FeatureValuation, int> min_depth;
    for (int i = 0; i < table.num_states(); ++i) {
        vals[i] = ctx.eval(table.states[i]);
        auto [it, inserted] = min_depth.emplace(vals[i], table.depth[i]);
        if (!inserted)
            it->second = min(it->second, table.depth[i]);
    }
    map<FeatureValuation, vector<int>> optimal_for;
    for (int i = 0; i < table.num_states(); ++i)
        if (table.depth[i] == min_depth[vals[i]])
            optimal_for[vals[i]].push_back(i);

    // Distinct valuation changes over compatible reachable transitions.
    map<pair<FeatureValuation, FeatureValuation>, int> witnessed;  // -> example state
    for (int i = 0; i < table.num_states(); ++i) {
        for (const auto &[action, succ] : problem.successors(table.states[i])) {
            FeatureValuation v2 = ctx.eval(succ);
            bool compatible = false;
            for (const Rule &rule : ctx.rules.rules)
                if (pair_compatible(rule, num_features, vals[i], v2)) {
                    compatible = true;
                    break;
                }
            if (compatible)
                witnessed.emplace(make_pair(vals[i], v2), i);
        }
    }

    for (const auto &[change, example] : witnessed) {
        const auto &[v, v2] = change;
        for (int s1 : optimal_for[v]) {
            bool reproduced = false;
            for (const auto &[action, succ] : problem.successors(table.states[s1])) {
                FeatureValuation w2 = ctx.eval(succ);
                if (w2 != v2)
                    continue;
                for (const Rule &rule : ctx.rules.rules) {
                    if (pair_compatible(rule, num_features, v, w2)) {
                        reproduced = true;
                        break;
                    }
                }
                if (reproduced)
                    break;
            }
            if (!reproduced) {
                return {false, "state " + describe_state(problem, table.states[s1]) +
                        " is optimal for its valuation but cannot reproduce a "
                        "compatible change witnessed from " +
                        describe_state(problem, table.states[example])};
            }
        }
    }
    return {true, ""};
}

bool check_policy_optimal(const PolicyContext &ctx, const ReachabilityTable &oracle,
                          long cap) {
    TrajectoryVerdict verdict = enumerate_maximal_trajectories(ctx, cap, 0);
    if (!verdict.solves)
        throw NotASolution("check_policy_optimal: the policy does not solve the problem");
    if (!oracle.goal_cost)
        throw PlanningError("check_policy_optimal: unsolvable problem");

    // The policy solves, so its transition subgraph is acyclic; the longest
    // root-to-goal path is the longest induced plan.
    PolicyExploration graph = explore_policy(ctx, cap);
    vector<int> longest(graph.states.size(), -1);
    longest[0] = 0;
    // States are discovered by BFS, but path lengths need a topological
    // order; iterate until fixpoint (graph is a small DAG).
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i < graph.states.size(); ++i) {
            if (longest[i] < 0)
                continue;
            for (const auto &edge : graph.edges[i]) {
                if (longest[edge.target] < longest[i] + 1) {
                    longest[edge.target] = longest[i] + 1;
                    changed = true;
                }
            }
        }
    }
    int longest_goal = 0;
    for (size_t i = 0; i < graph.states.size(); ++i)
        if (graph.goal_state[i])
            longest_goal = max(longest_goal, longest[i]);
    return longest_goal == *oracle.goal_cost;
}

VerifierResult check_closed(const PolicyContext &ctx, long cap) {
    PolicyExploration graph = explore_policy(ctx, cap);
    for (size_t i = 0; i < graph.states.size(); ++i)
        if (!graph.goal_state[i] && graph.edges[i].empty())
            return {false, "policy-reachable non-goal state " +
                    describe_state(*ctx.problem, graph.states[i]) +
                    " has no compatible transition"};
    return {true, ""};
}

VerifierResult check_sound(const PolicyContext &ctx, long cap) {
    const GroundProblem &problem = *ctx.problem;
    ReachabilityTable table = bfs_reachable(problem, problem.init,
                                            problem_goal(problem), cap);
    int num_features = int(ctx.features.size());
    for (int i = 0; i < table.num_states(); ++i) {
        const State &s = table.states[i];
        if (problem.is_goal(s))
            continue;
        FeatureValuation v = ctx.eval(s);
        bool applicable = false;
        for (const Rule &rule : ctx.rules.rules)
            if (conditions_hold(rule, v)) {
                applicable = true;
                break;
            }
        if (!applicable)
            continue;
        bool compatible = false;
        for (const auto &[action, succ] : problem.successors(s)) {
            FeatureValuation v2 = ctx.eval(succ);
            for (const Rule &rule : ctx.rules.rules)
                if (pair_compatible(rule, num_features, v, v2)) {
                    compatible = true;
                    break;
                }
            if (compatible)
                break;
        }
        if (!compatible)
            return {false, "reachable non-goal state " + describe_state(problem, s) +
                    " has an applicable rule but no compatible transition"};
    }
    return {true, ""};
}

VerifierResult check_projection(const PolicyContext &sub, const PolicyContext &super,
                                long cap) {
    const GroundProblem &problem = *sub.problem;
    PolicyExploration graph = explore_policy(sub, cap);
    for (size_t i = 0; i < graph.states.size(); ++i) {
        if (graph.goal_state[i])
            continue;
        const State &s = graph.states[i];
        for (const auto &edge : graph.edges[i]) {
            if (transition_compatible(super, s, graph.states[edge.target]).empty())
                return {false, "transition from " + describe_state(problem, s) +
                        " is compatible with the candidate projection but not "
                        "with the general policy"};
        }
        if (graph.edges[i].empty()) {
            // Maximal non-goal endpoint: it must be maximal under super too.
            for (const auto &[action, succ] : problem.successors(s)) {
                if (!transition_compatible(super, s, succ).empty())
                    return {false, "state " + describe_state(problem, s) +
                            " ends a trajectory of the candidate projection but the "
                            "general policy can continue from it"};
            }
        }
    }
    return {true, ""};
}

}
