#ifndef SEARCH_REACHABILITY_H
#define SEARCH_REACHABILITY_H

#include "../core/problem.h"

#include <functional>
#include <optional>
#include <unordered_map>
#include <vector>

namespace wbp {

using GoalPredicate = std::function<bool(const State &)>;

GoalPredicate problem_goal(const GroundProblem &problem);

/*
  Exhaustive breadth-first table over the states reachable from an initial
  state: exact depths, optimal goal cost, and per-tuple optimal costs d(t).
  This is the independent oracle the width and policy verifiers check
  against. Throws CapExceeded beyond state_cap states.
*/
class ReachabilityTable {
public:
    const GroundProblem *problem;
    std::vector<State> states;  // breadth-first order
    std::vector<int> depth;
    std::vector<int> parent, parent_action;
    std::unordered_map<State, int, BitsetHash> index;
    std::vector<std::vector<int>> by_depth;  // state indices per depth
    std::optional<int> goal_cost;
    bool truncated = false;  // exploration stopped after the goal layer

    int find(const State &s) const {
        auto it = index.find(s);
        return it == index.end() ? -1 : it->second;
    }

    int num_states() const {
        return int(states.size());
    }

    int max_depth() const {
        return int(by_depth.size()) - 1;
    }

    // Minimal depth of a reachable state containing all tuple atoms, or -1.
    int tuple_depth(const std::vector<AtomId> &tuple) const;

    // Plan reaching the first goal state found, if any.
    std::optional<std::vector<int>> extract_goal_plan(const GoalPredicate &goal) const;

    // Cached successor state indices (only meaningful on untruncated tables).
    const std::vector<int> &successor_indices(int state_index) const;

private:
    mutable std::vector<std::vector<int>> succ_cache;
    mutable std::vector<bool> succ_cached;
};

/*
  Explores the full reachable space. With stop_after_goal_layer, exploration
  ends once the layer containing the closest goal state is complete, which
  is all the width machinery needs.
*/
ReachabilityTable bfs_reachable(const GroundProblem &problem, const State &init,
                                const GoalPredicate &goal,
                                long state_cap = 2'000'000,
                                bool stop_after_goal_layer = false);

// Oracle over the problem's own initial state and goal.
ReachabilityTable bfs_oracle(const GroundProblem &problem,
                             long state_cap = 2'000'000);

}

#endif
