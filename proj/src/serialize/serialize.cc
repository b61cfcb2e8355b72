#include "serialize.h"

#include <algorithm>
#include <deque>
#include <set>

using namespace std;

namespace wbp {

PrecedenceOracle PrecedenceOracle::lexicographic(vector<int> feature_indices) {
    PrecedenceOracle oracle;
    oracle.oracle_kind = Kind::lexicographic;
    oracle.lex_features = std::move(feature_indices);
    return oracle;
}

PrecedenceOracle PrecedenceOracle::goal_counter(int feature_index) {
    PrecedenceOracle oracle;
    oracle.oracle_kind = Kind::goal_counter;
    oracle.lex_features = {feature_index};
    return oracle;
}

PrecedenceOracle PrecedenceOracle::rule_closure(const RuleSet &rules,
                                                shared_ptr<InducedOrder> order) {
    PrecedenceOracle oracle;
    oracle.oracle_kind = Kind::rule_closure;
    oracle.rules = rules;
    oracle.closure = std::move(order);
    return oracle;
}

PrecedenceOracle PrecedenceOracle::rule_direct(const RuleSet &rules) {
    PrecedenceOracle oracle;
    oracle.oracle_kind = Kind::rule_direct;
    oracle.rules = rules;
    return oracle;
}

bool PrecedenceOracle::precedes(const FeatureValuation &f2, const FeatureValuation &f) const {
    ++test_count;
    switch (oracle_kind) {
    case Kind::lexicographic:
    case Kind::goal_counter:
        for (int feature : lex_features) {
            if (f2[feature] < f[feature])
                return true;
            if (f2[feature] > f[feature])
                return false;
        }
        return false;
    case Kind::rule_closure:
        return closure->descends(f, f2);
    case Kind::rule_direct:
        for (const Rule &rule : rules.rules)
            if (pair_compatible(rule, int(f.size()), f, f2))
                return true;
        return false;
    }
    return false;
}

PrecedenceOracle closure_order(const GroundProblem &problem, const PolicyContext &ctx,
                               long cap) {
    ReachabilityTable table = bfs_reachable(problem, problem.init,
                                            problem_goal(problem), cap);
    vector<FeatureValuation> valuations;
    set<FeatureValuation> goal_valuations;
    valuations.reserve(table.num_states());
    for (int i = 0; i < table.num_states(); ++i) {
        valuations.push_back(ctx.eval(table.states[i]));
        if (problem.is_goal(table.states[i]))
            goal_valuations.insert(valuations.back());
    }
    auto order = make_shared<InducedOrder>(
        ctx.rules, valuations,
        [goal_valuations](const FeatureValuation &v) {return goal_valuations.count(v) > 0;});
    return PrecedenceOracle::rule_closure(ctx.rules, order);
}

namespace {

struct EpisodeOutcome {
    SearchResult result;
    int k_used;
};

// IW(0), IW(1), ..., IW(k_cap) from `from` towards the episode goal.
optional<EpisodeOutcome> run_episode(const GroundProblem &problem, const State &from,
                                     const GoalPredicate &target, int k_cap,
                                     const SearchLimits &limits) {
    SearchResult zero = zero_step_check(problem, from, target);
    if (zero.solved())
        return EpisodeOutcome{zero, 0};
    for (int k = 1; k <= k_cap; ++k) {
        SearchResult result = iw_k(problem, from, target, k, limits);
        if (result.solved())
            return EpisodeOutcome{result, k};
        if (result.status == SearchStatus::exhausted)
            return nullopt;
    }
    return nullopt;
}

SiwResult siw_loop(const GroundProblem &problem, const vector<Feature> &features,
                   const function<GoalPredicate(const FeatureValuation &)> &episode_goal,
                   const function<optional<int>(const FeatureValuation &,
                                                const FeatureValuation &)> &note_rule,
                   int k_cap, const SearchLimits &limits) {
    SiwResult siw;
    State current = problem.init;
    long max_episodes = 1'000'000;
    while (!problem.is_goal(current)) {
        if (--max_episodes < 0)
            throw EpisodeFailed("episode budget exhausted; the order is not well founded");
        FeatureValuation v = eval_features(features, current);
        auto outcome = run_episode(problem, current, episode_goal(v), k_cap, limits);
        if (!outcome) {
            siw.stuck_state = current;
            return siw;
        }
        State achieved = replay_plan(problem, current, outcome->result.plan);
        SubproblemReport episode;
        episode.start = current;
        episode.achieved = achieved;
        episode.width_used = outcome->k_used;
        episode.expanded = outcome->result.expanded;
        episode.generated = outcome->result.generated;
        episode.plan_length = int(outcome->result.plan.size());
        episode.rule_fired = note_rule(v, eval_features(features, achieved));
        siw.episodes.push_back(episode);
        siw.plan.insert(siw.plan.end(), outcome->result.plan.begin(),
                        outcome->result.plan.end());
        current = achieved;
    }
    siw.solved = true;
    return siw;
}

}

SiwResult siw_phi(const GroundProblem &problem, const vector<Feature> &features,
                  const PrecedenceOracle &order, int k_cap, const SearchLimits &limits) {
    auto episode_goal = [&](const FeatureValuation &v) -> GoalPredicate {
        return [&, v](const State &s) {
            return problem.is_goal(s) || order.precedes(eval_features(features, s), v);
        };
    };
    auto note_rule = [](const FeatureValuation &, const FeatureValuation &)
        -> optional<int> {return nullopt;};
    SiwResult result = siw_loop(problem, features, episode_goal, note_rule, k_cap, limits);
    for (const auto &episode : result.episodes) {
        if (!problem.is_goal(episode.achieved) &&
            !order.precedes(eval_features(features, episode.achieved),
                            eval_features(features, episode.start)))
            throw EpisodeFailed("achieved state does not precede the episode start");
    }
    result.order_tests = order.tests();
    return result;
}

SiwResult siw_r(const PolicyContext &sketch, const vector<BoolValuation> &goal_nodes,
                int k_cap, const SearchLimits &limits) {
    PolicyGraph graph = build_policy_graph(sketch.rules, goal_nodes);
    TerminationCertificate cert = sieve_terminates(graph);
    if (!cert.terminating)
        throw IllFormedSketch("sketch is not terminating: " + cert.witness_summary);

    const GroundProblem &problem = *sketch.problem;
    int num_features = int(sketch.features.size());
    auto episode_goal = [&](const FeatureValuation &v) -> GoalPredicate {
        return [&, v](const State &s) {
            if (problem.is_goal(s))
                return true;
            FeatureValuation v2 = eval_features(sketch.features, s);
            for (const Rule &rule : sketch.rules.rules)
                if (pair_compatible(rule, num_features, v, v2))
                    return true;
            return false;
        };
    };
    auto note_rule = [&](const FeatureValuation &v,
                         const FeatureValuation &v2) -> optional<int> {
        for (size_t r = 0; r < sketch.rules.rules.size(); ++r)
            if (pair_compatible(sketch.rules.rules[r], num_features, v, v2))
                return int(r);
        return nullopt;
    };
    return siw_loop(problem, sketch.features, episode_goal, note_rule, k_cap, limits);
}

vector<State> decompose(const GroundProblem &problem, const vector<Feature> &features,
                        const PrecedenceOracle &order, long cap,
                        const SearchLimits &limits) {
    vector<State> members;
    unordered_map<State, int, BitsetHash> seen;
    if (problem.is_goal(problem.init))
        return members;
    members.push_back(problem.init);
    seen[problem.init] = 0;

    for (size_t i = 0; i < members.size(); ++i) {
        State start = members[i];
        FeatureValuation v = eval_features(features, start);
        // Layered search until the first layer holding a goal or an
        // order-improving state.
        auto improving = [&](const State &s) {
            return order.precedes(eval_features(features, s), v);
        };
        ReachabilityTable table = bfs_reachable(
            problem, start,
            [&](const State &s) {return problem.is_goal(s) || improving(s);},
            limits.state_cap, /*stop_after_goal_layer=*/true);
        if (!table.goal_cost)
            continue;  // no qualifying state anywhere: dead subproblem
        int layer = *table.goal_cost;
        // A goal at this layer means no goal is strictly closer; all
        // non-goal improving states of the layer join the collection.
        for (int j : table.by_depth[layer]) {
            const State &s = table.states[j];
            if (problem.is_goal(s) || !improving(s))
                continue;
            if (seen.count(s))
                continue;
            if (long(members.size()) >= cap)
                throw CapExceeded("decomposition exceeds cap");
            seen[s] = int(members.size());
            members.push_back(s);
        }
    }
    return members;
}

WidthResult serialized_width(const GroundProblem &problem, const vector<Feature> &features,
                             const PrecedenceOracle &order, int k_max,
                             long decompose_cap, const WidthLimits &limits) {
    vector<State> members = decompose(problem, features, order, decompose_cap);
    int best = 0;
    for (const State &start : members) {
        FeatureValuation v = eval_features(features, start);
        GoalPredicate sub_goal = [&](const State &s) {
            return problem.is_goal(s) ||
                order.precedes(eval_features(features, s), v);
        };
        WidthResult w = exact_width(problem, start, sub_goal, k_max, limits);
        if (w.not_within())
            return {nullopt, k_max};
        best = max(best, *w.width);
    }
    return {best, k_max};
}

WidthResult sketch_width(const PolicyContext &sketch, int k_max, bool fast_mode,
                         long state_cap, const WidthLimits &limits) {
    const GroundProblem &problem = *sketch.problem;
    int num_features = int(sketch.features.size());

    vector<State> starts;
    if (fast_mode) {
        starts = decompose(problem, sketch.features,
                           PrecedenceOracle::rule_direct(sketch.rules), state_cap);
    } else {
        ReachabilityTable table = bfs_reachable(problem, problem.init,
                                                problem_goal(problem), state_cap);
        starts = table.states;
    }

    int best = 0;
    for (const State &start : starts) {
        if (problem.is_goal(start))
            continue;  // the subproblem is trivially width 0
        FeatureValuation v = eval_features(sketch.features, start);
        GoalPredicate sub_goal = [&](const State &s) {
            if (problem.is_goal(s))
                return true;
            FeatureValuation v2 = eval_features(sketch.features, s);
            for (const Rule &rule : sketch.rules.rules)
                if (pair_compatible(rule, num_features, v, v2))
                    return true;
            return false;
        };
        WidthResult w = exact_width(problem, start, sub_goal, k_max, limits);
        if (w.not_within())
            return {nullopt, k_max};
        best = max(best, *w.width);
    }
    return {best, k_max};
}

}
