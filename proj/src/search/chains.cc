#include "chains.h"

#include "iw.h"

#include <algorithm>
#include <map>
#include <unordered_set>

using namespace std;

namespace wbp {

namespace {

bool state_contains(const State &s, const vector<AtomId> &tuple) {
    for (AtomId atom : tuple)
        if (!s.test(atom))
            return false;
    return true;
}

string tuple_text(const ReachabilityTable &table, const vector<AtomId> &tuple) {
    string text = "{";
    for (size_t i = 0; i < tuple.size(); ++i) {
        if (i > 0)
            text += ",";
        text += table.problem->universe.name_of(tuple[i]);
    }
    return text + "}";
}

// Condition 2, stated per consecutive tuple pair: every state containing t
// at depth d(t) has a successor containing t2.
bool pair_extends(const ReachabilityTable &table, const vector<AtomId> &t, int dt,
                  const vector<AtomId> &t2, string *why) {
    for (int i : table.by_depth[dt]) {
        if (!state_contains(table.states[i], t))
            continue;
        bool extended = false;
        for (const auto &[action, succ] : table.problem->successors(table.states[i])) {
            if (state_contains(succ, t2)) {
                extended = true;
                break;
            }
        }
        if (!extended) {
            if (why)
                *why = "state at depth " + to_string(dt) + " containing " +
                    tuple_text(table, t) + " has no successor containing " +
                    tuple_text(table, t2);
            return false;
        }
    }
    return true;
}

bool closes_chain(const ReachabilityTable &table, const GoalPredicate &goal,
                  const vector<AtomId> &t, int dt, string *why) {
    if (!table.goal_cost || dt != *table.goal_cost) {
        if (why)
            *why = "last tuple " + tuple_text(table, t) + " has depth " + to_string(dt) +
                ", optimal cost is " +
                (table.goal_cost ? to_string(*table.goal_cost) : string("undefined"));
        return false;
    }
    for (int i : table.by_depth[dt]) {
        if (state_contains(table.states[i], t) && !goal(table.states[i])) {
            if (why)
                *why = "non-goal state at optimal depth contains the last tuple " +
                    tuple_text(table, t);
            return false;
        }
    }
    return true;
}

}

ChainCheck check_admissible(const ReachabilityTable &oracle, const Chain &chain) {
    if (chain.tuples.empty())
        return {false, "empty chain"};
    if (!state_contains(oracle.states[0], chain.tuples[0]))
        return {false, "t_0 is not true in the initial state"};

    vector<int> depths;
    for (const auto &tuple : chain.tuples) {
        int d = oracle.tuple_depth(tuple);
        if (d < 0)
            return {false, "tuple " + tuple_text(oracle, tuple) + " holds in no reachable state"};
        depths.push_back(d);
    }
    for (size_t i = 0; i + 1 < chain.tuples.size(); ++i) {
        if (depths[i + 1] != depths[i] + 1)
            return {false, "d(" + tuple_text(oracle, chain.tuples[i + 1]) + ") = " +
                    to_string(depths[i + 1]) + " != d(" +
                    tuple_text(oracle, chain.tuples[i]) + ") + 1"};
        string why;
        if (!pair_extends(oracle, chain.tuples[i], depths[i], chain.tuples[i + 1], &why))
            return {false, why};
    }
    string why;
    if (!closes_chain(oracle, problem_goal(*oracle.problem), chain.tuples.back(),
                      depths.back(), &why))
        return {false, why};
    return {true, ""};
}

ChainCheck check_feasible(const ReachabilityTable &oracle, const Chain &chain) {
    if (chain.tuples.empty())
        return {false, "empty chain"};
    if (!state_contains(oracle.states[0], chain.tuples[0]))
        return {false, "t_0 is not true in the initial state"};
    int n = int(chain.tuples.size()) - 1;
    int d = oracle.tuple_depth(chain.tuples.back());
    if (d != n)
        return {false, "optimal plans for t_n have length " + to_string(d) +
                ", chain needs " + to_string(n)};
    string why;
    if (!closes_chain(oracle, problem_goal(*oracle.problem), chain.tuples.back(), d, &why))
        return {false, why};
    return {true, ""};
}

namespace {

/*
  Layered admissible-chain existence search for one k. Tuples are interned
  with their first depths by scanning states in breadth-first order; the
  chain search walks the layers keeping only reached tuples.
*/
class ChainSearch {
    const ReachabilityTable &table;
    const GoalPredicate &goal;
    const int k;
    const long tuple_budget;

    map<vector<AtomId>, int> tuple_id;   // interned tuples
    vector<int> first_depth;             // by tuple id
    vector<vector<int>> state_new_tuples;  // per state: tuples first seen there

    void enumerate_subsets(const vector<int> &atoms, int state_index, int d) {
        // All subsets of size 1..k.
        vector<int> pick;
        auto recurse = [&](auto &&self, size_t start) -> void {
            if (!pick.empty()) {
                auto [it, inserted] = tuple_id.emplace(pick, int(first_depth.size()));
                if (inserted) {
                    if (long(first_depth.size()) >= tuple_budget)
                        throw TupleBudgetExceeded("tuple budget exceeded at k=" +
                                                  to_string(k));
                    first_depth.push_back(d);
                }
                // Several states of one layer can share a first-depth tuple.
                if (first_depth[it->second] == d)
                    state_new_tuples[state_index].push_back(it->second);
            }
            if (int(pick.size()) == k)
                return;
            for (size_t i = start; i < atoms.size(); ++i) {
                pick.push_back(atoms[i]);
                self(self, i + 1);
                pick.pop_back();
            }
        };
        recurse(recurse, 0);
    }

public:
    ChainSearch(const ReachabilityTable &table, const GoalPredicate &goal, int k,
                long tuple_budget)
        : table(table), goal(goal), k(k), tuple_budget(tuple_budget) {
        state_new_tuples.resize(table.num_states());
        for (int i = 0; i < table.num_states(); ++i)
            enumerate_subsets(table.states[i].to_indices(), i, table.depth[i]);
    }

    bool chain_exists() {
        int target = *table.goal_cost;
        // Layer-d tuple ids that are reachable through the chain conditions.
        vector<char> reached(first_depth.size(), 0);
        vector<int> frontier;
        for (const auto &[tuple, id] : tuple_id) {
            if (first_depth[id] == 0) {
                reached[id] = 1;
                frontier.push_back(id);
            }
        }
        // Reverse map from id to tuple for the state scans.
        vector<const vector<AtomId> *> tuples(first_depth.size());
        for (const auto &[tuple, id] : tuple_id)
            tuples[id] = &tuple;

        for (int d = 0; d < target; ++d) {
            vector<int> next_frontier;
            for (int t_id : frontier) {
                const vector<AtomId> &t = *tuples[t_id];
                // Intersect, over the depth-d states containing t, the tuples
                // first seen in their depth-(d+1) successors.
                map<int, int> counts;
                int holders = 0;
                for (int i : table.by_depth[d]) {
                    if (!state_contains(table.states[i], t))
                        continue;
                    ++holders;
                    unordered_set<int> local;
                    for (int j : table.successor_indices(i)) {
                        if (table.depth[j] != d + 1)
                            continue;
                        for (int cand : state_new_tuples[j])
                            local.insert(cand);
                    }
                    for (int cand : local)
                        ++counts[cand];
                }
                for (const auto &[cand, count] : counts) {
                    if (count == holders && !reached[cand]) {
                        reached[cand] = 1;
                        next_frontier.push_back(cand);
                    }
                }
            }
            frontier = std::move(next_frontier);
            if (frontier.empty())
                return false;
        }
        for (int t_id : frontier)
            if (closes_chain(table, goal, *tuples[t_id], target, nullptr))
                return true;
        return false;
    }
};

}

WidthResult exact_width(const GroundProblem &problem, const State &init,
                        const GoalPredicate &goal, int k_max,
                        const WidthLimits &limits) {
    SearchResult zero = zero_step_check(problem, init, goal);
    if (zero.solved())
        return {0, k_max};

    ReachabilityTable table = bfs_reachable(problem, init, goal, limits.state_cap,
                                            /*stop_after_goal_layer=*/true);
    if (!table.goal_cost)
        throw PlanningError("exact_width: no goal state is reachable");

    for (int k = 1; k <= k_max; ++k) {
        ChainSearch search(table, goal, k, limits.tuple_budget);
        if (search.chain_exists())
            return {k, k_max};
    }
    return {nullopt, k_max};
}

WidthResult exact_width(const GroundProblem &problem, int k_max,
                        const WidthLimits &limits) {
    return exact_width(problem, problem.init, problem_goal(problem), k_max, limits);
}

string to_text(const WidthResult &w) {
    return w.width ? std::to_string(*w.width) : (">" + std::to_string(w.k_max));
}

}
