#include "policy.h"

#include "../domains/features.h"

#include <algorithm>
#include <cassert>
#include <deque>

using namespace std;

namespace wbp {

PolicyContext make_policy_context(const GroundProblem &problem, const RuleSet &rules) {
    return {&problem, rules, bind_features(problem, rules)};
}

vector<int> transition_compatible(const PolicyContext &ctx, const State &s,
                                  const State &s2) {
    FeatureValuation v = ctx.eval(s);
    FeatureValuation v2 = ctx.eval(s2);
    vector<int> result;
    int n = int(ctx.features.size());
    for (size_t i = 0; i < ctx.rules.rules.size(); ++i)
        if (pair_compatible(ctx.rules.rules[i], n, v, v2))
            result.push_back(int(i));
    return result;
}

int PolicyExploration::find(const State &s) const {
    auto it = index.find(s);
    return it == index.end() ? -1 : it->second;
}

PolicyExploration explore_policy(const PolicyContext &ctx, long cap) {
    const GroundProblem &problem = *ctx.problem;
    PolicyExploration result;
    int num_features = int(ctx.features.size());

    result.states.push_back(problem.init);
    result.valuations.push_back(ctx.eval(problem.init));
    result.goal_state.push_back(problem.is_goal(problem.init));
    result.index[problem.init] = 0;
    result.edges.emplace_back();

    for (size_t i = 0; i < result.states.size(); ++i) {
        if (result.goal_state[i])
            continue;
        State current = result.states[i];
        FeatureValuation v = result.valuations[i];
        for (const auto &[action, succ] : problem.successors(current)) {
            FeatureValuation v2 = eval_features(ctx.features, succ);
            vector<int> rules;
            for (size_t r = 0; r < ctx.rules.rules.size(); ++r)
                if (pair_compatible(ctx.rules.rules[r], num_features, v, v2))
                    rules.push_back(int(r));
            if (rules.empty())
                continue;
            int j = result.find(succ);
            if (j < 0) {
                if (long(result.states.size()) >= cap)
                    throw CapExceeded("policy exploration exceeds cap");
                j = int(result.states.size());
                result.index[succ] = j;
                result.states.push_back(succ);
                result.valuations.push_back(v2);
                result.goal_state.push_back(problem.is_goal(succ));
                result.edges.emplace_back();
            }
            result.edges[i].push_back({action, j, rules});
        }
    }
    return result;
}

namespace {

// Depth-first sampling of maximal trajectories over the exploration graph.
void sample_trajectories(const PolicyExploration &graph, int max_samples,
                         TrajectoryVerdict &verdict) {
    vector<int> path = {0};
    vector<char> on_path(graph.states.size(), 0);
    on_path[0] = 1;
    vector<pair<int, vector<int>>> transitions;

    auto emit = [&](Trajectory::Kind kind, optional<State> cycle) {
        if (int(verdict.trajectories.size()) >= max_samples)
            return;
        Trajectory t;
        for (int i : path)
            t.states.push_back(graph.states[i]);
        t.transitions = transitions;
        t.kind = kind;
        t.cycle_witness = std::move(cycle);
        verdict.trajectories.push_back(std::move(t));
    };

    auto dfs = [&](auto &&self, int node) -> void {
        if (int(verdict.trajectories.size()) >= max_samples)
            return;
        if (graph.goal_state[node]) {
            emit(Trajectory::Kind::goal_reached, nullopt);
            return;
        }
        if (graph.edges[node].empty()) {
            emit(Trajectory::Kind::stuck, nullopt);
            return;
        }
        for (const auto &edge : graph.edges[node]) {
            if (on_path[edge.target]) {
                // Revisiting a state on the current path: infinite trajectory.
                transitions.emplace_back(edge.action, edge.rules);
                path.push_back(edge.target);
                emit(Trajectory::Kind::infinite, graph.states[edge.target]);
                path.pop_back();
                transitions.pop_back();
                continue;
            }
            on_path[edge.target] = 1;
            path.push_back(edge.target);
            transitions.emplace_back(edge.action, edge.rules);
            self(self, edge.target);
            transitions.pop_back();
            path.pop_back();
            on_path[edge.target] = 0;
        }
    };
    dfs(dfs, 0);
}

}

TrajectoryVerdict enumerate_maximal_trajectories(const PolicyContext &ctx, long cap,
                                                 int max_samples) {
    PolicyExploration graph = explore_policy(ctx, cap);
    TrajectoryVerdict verdict;
    verdict.solves = true;

    // Stuck non-goal nodes.
    for (size_t i = 0; i < graph.states.size(); ++i) {
        if (!graph.goal_state[i] && graph.edges[i].empty()) {
            verdict.solves = false;
            if (!verdict.stuck_witness)
                verdict.stuck_witness = graph.states[i];
        }
    }
    // Reachable cycle => an infinite maximal trajectory exists.
    enum { fresh, active, done };
    vector<char> color(graph.states.size(), fresh);
    vector<pair<int, size_t>> stack = {{0, 0}};
    color[0] = active;
    while (!stack.empty()) {
        auto &[node, edge_pos] = stack.back();
        if (graph.goal_state[node] || edge_pos >= graph.edges[node].size()) {
            color[node] = done;
            stack.pop_back();
            continue;
        }
        int target = graph.edges[node][edge_pos++].target;
        if (color[target] == active) {
            verdict.solves = false;
            if (!verdict.cycle_witness)
                verdict.cycle_witness = graph.states[target];
        } else if (color[target] == fresh) {
            color[target] = active;
            stack.emplace_back(target, 0);
        }
    }

    sample_trajectories(graph, max_samples, verdict);
    return verdict;
}

PolicyContext chain_to_policy(const GroundProblem &problem, const Chain &chain) {
    int n = int(chain.tuples.size()) - 1;
    assert(n >= 0);
    PolicyContext ctx;
    ctx.problem = &problem;
    ctx.rules.name = "chain_policy";
    ctx.rules.intended_use = RuleUse::policy;
    for (int i = 0; i <= n; ++i) {
        string name = "t" + to_string(i);
        ctx.rules.features.push_back({name, FeatureKind::boolean});
        vector<vector<AtomId>> later(chain.tuples.begin() + i, chain.tuples.end());
        vector<AtomId> own = chain.tuples[i];
        // True when t_i holds and t_j fails for all j > i.
        ctx.features.push_back({name, FeatureKind::boolean, [own, later](const State &s) {
            for (AtomId atom : own)
                if (!s.test(atom))
                    return 0;
            for (size_t j = 1; j < later.size(); ++j) {
                bool holds = true;
                for (AtomId atom : later[j])
                    if (!s.test(atom)) {
                        holds = false;
                        break;
                    }
                if (holds)
                    return 0;
            }
            return 1;
        }});
    }
    for (int i = 0; i < n; ++i) {
        Rule rule;
        rule.id = "r" + to_string(i);
        rule.conditions = {{i, CondTest::is_true}};
        rule.effects = {{i, EffectChange::set_false}, {i + 1, EffectChange::set_true}};
        ctx.rules.rules.push_back(rule);
    }
    return ctx;
}

}
