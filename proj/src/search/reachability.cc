#include "reachability.h"

#include <algorithm>

using namespace std;

namespace wbp {

GoalPredicate problem_goal(const GroundProblem &problem) {
    return [&problem](const State &s) {return problem.is_goal(s);};
}

int ReachabilityTable::tuple_depth(const vector<AtomId> &tuple) const {
    // States are in breadth-first order, so the first hit is minimal.
    for (int i = 0; i < num_states(); ++i) {
        bool contains = true;
        for (AtomId atom : tuple) {
            if (!states[i].test(atom)) {
                contains = false;
                break;
            }
        }
        if (contains)
            return depth[i];
    }
    return -1;
}

optional<vector<int>> ReachabilityTable::extract_goal_plan(const GoalPredicate &goal) const {
    for (int i = 0; i < num_states(); ++i) {
        if (goal(states[i])) {
            vector<int> plan;
            for (int at = i; parent[at] >= 0; at = parent[at])
                plan.push_back(parent_action[at]);
            reverse(plan.begin(), plan.end());
            return plan;
        }
    }
    return nullopt;
}

const vector<int> &ReachabilityTable::successor_indices(int state_index) const {
    if (succ_cache.empty()) {
        succ_cache.resize(states.size());
        succ_cached.assign(states.size(), false);
    }
    if (!succ_cached[state_index]) {
        for (const auto &[action, succ] : problem->successors(states[state_index])) {
            int j = find(succ);
            if (j >= 0)
                succ_cache[state_index].push_back(j);
        }
        succ_cached[state_index] = true;
    }
    return succ_cache[state_index];
}

ReachabilityTable bfs_reachable(const GroundProblem &problem, const State &init,
                                const GoalPredicate &goal, long state_cap,
                                bool stop_after_goal_layer) {
    ReachabilityTable table;
    table.problem = &problem;
    table.truncated = stop_after_goal_layer;
    table.states.push_back(init);
    table.depth.push_back(0);
    table.parent.push_back(-1);
    table.parent_action.push_back(-1);
    table.index[init] = 0;
    table.by_depth.push_back({0});
    if (goal(init))
        table.goal_cost = 0;

    for (size_t i = 0; i < table.states.size(); ++i) {
        int d = table.depth[i];
        if (stop_after_goal_layer && table.goal_cost && d >= *table.goal_cost)
            break;
        State current = table.states[i];  // copy: the vector may reallocate
        for (const auto &[action, succ] : problem.successors(current)) {
            if (table.index.count(succ))
                continue;
            if (long(table.states.size()) >= state_cap)
                throw CapExceeded("reachable states exceed cap of " + to_string(state_cap));
            int j = int(table.states.size());
            table.index[succ] = j;
            table.states.push_back(succ);
            table.depth.push_back(d + 1);
            table.parent.push_back(int(i));
            table.parent_action.push_back(action);
            if (int(table.by_depth.size()) <= d + 1)
                table.by_depth.resize(d + 2);
            table.by_depth[d + 1].push_back(j);
            if (!table.goal_cost && goal(succ))
                table.goal_cost = d + 1;
        }
    }
    return table;
}

ReachabilityTable bfs_oracle(const GroundProblem &problem, long state_cap) {
    return bfs_reachable(problem, problem.init, problem_goal(problem), state_cap);
}

}
