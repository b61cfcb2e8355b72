#include "iw.h"

#include <algorithm>
#include <map>
#include <unordered_map>

using namespace std;

namespace wbp {

namespace {

struct Node {
    State state;
    int parent;
    int action;
};

vector<int> extract_plan(const vector<Node> &nodes, int at) {
    vector<int> plan;
    for (; nodes[at].parent >= 0; at = nodes[at].parent)
        plan.push_back(nodes[at].action);
    reverse(plan.begin(), plan.end());
    return plan;
}

/*
  Shared breadth-first skeleton: is_novel marks at generation time and
  decides enqueueing. Goals are tested on generated states (and on init)
  before the novelty test.
*/
template<typename IsNovel>
SearchResult breadth_first_pruned(const GroundProblem &problem, const State &init,
                                  const GoalPredicate &goal, IsNovel &&is_novel,
                                  const SearchLimits &limits) {
    SearchResult result;
    vector<Node> nodes;
    nodes.push_back({init, -1, -1});
    result.generated = 1;
    if (goal(init)) {
        result.status = SearchStatus::solved;
        return result;
    }
    is_novel(init);
    bool pruned_any = false;

    for (size_t i = 0; i < nodes.size(); ++i) {
        State current = nodes[i].state;
        ++result.expanded;
        int applicable = 0;
        for (const auto &[action, succ] : problem.successors(current)) {
            ++applicable;
            ++result.generated;
            if (goal(succ)) {
                nodes.push_back({succ, int(i), action});
                result.observed_b = max(result.observed_b, applicable);
                result.status = SearchStatus::solved;
                result.plan = extract_plan(nodes, int(nodes.size()) - 1);
                return result;
            }
            if (!is_novel(succ)) {
                pruned_any = true;
                continue;
            }
            if (long(nodes.size()) >= limits.state_cap)
                throw CapExceeded("search exceeds state cap");
            nodes.push_back({succ, int(i), action});
        }
        result.observed_b = max(result.observed_b, applicable);
    }
    result.status = pruned_any ? SearchStatus::pruned_out : SearchStatus::exhausted;
    return result;
}

}

SearchResult iw_k(const GroundProblem &problem, const State &init,
                  const GoalPredicate &goal, int k, const SearchLimits &limits) {
    if (k < 1)
        throw PlanningError("iw_k needs k >= 1");
    NoveltyTable table(problem.num_atoms(), k);
    return breadth_first_pruned(
        problem, init, goal,
        [&table](const State &s) {return table.mark_and_test(s);}, limits);
}

SearchResult iw_k(const GroundProblem &problem, int k, const SearchLimits &limits) {
    return iw_k(problem, problem.init, problem_goal(problem), k, limits);
}

SearchResult zero_step_check(const GroundProblem &problem, const State &init,
                             const GoalPredicate &goal) {
    SearchResult result;
    result.generated = 1;
    if (goal(init)) {
        result.status = SearchStatus::solved;
        return result;
    }
    result.expanded = 1;
    int applicable = 0;
    for (const auto &[action, succ] : problem.successors(init)) {
        ++applicable;
        ++result.generated;
        if (goal(succ)) {
            result.status = SearchStatus::solved;
            result.plan = {action};
            result.observed_b = applicable;
            return result;
        }
    }
    result.observed_b = applicable;
    result.status = SearchStatus::pruned_out;
    return result;
}

IwResult iw(const GroundProblem &problem, const State &init,
            const GoalPredicate &goal, int k_max, const SearchLimits &limits) {
    int n = problem.num_atoms();
    if (k_max < 0)
        k_max = n;
    SearchResult zero = zero_step_check(problem, init, goal);
    if (zero.solved())
        return {0, zero};
    SearchResult last = zero;
    for (int k = 1; k <= k_max; ++k) {
        SearchResult result = iw_k(problem, init, goal, k, limits);
        if (result.solved())
            return {k, result};
        last = result;
        if (result.status == SearchStatus::exhausted)
            break;  // complete search without pruning: no solution
    }
    return {n + 1, last};
}

IwResult iw(const GroundProblem &problem, int k_max, const SearchLimits &limits) {
    return iw(problem, problem.init, problem_goal(problem), k_max, limits);
}

SearchResult iw_phi(const GroundProblem &problem, const vector<Feature> &features,
                    const State &init, const GoalPredicate &goal,
                    const SearchLimits &limits) {
    map<FeatureValuation, bool> seen;
    auto is_novel = [&](const State &s) {
        return seen.emplace(eval_features(features, s), true).second;
    };
    return breadth_first_pruned(problem, init, goal, is_novel, limits);
}

SearchResult iw_phi(const GroundProblem &problem, const vector<Feature> &features,
                    const SearchLimits &limits) {
    return iw_phi(problem, features, problem.init, problem_goal(problem), limits);
}

int effective_width(const GroundProblem &problem, const ReachabilityTable &oracle,
                    int k_max, const SearchLimits &limits) {
    if (!oracle.goal_cost)
        throw PlanningError("effective_width: problem is unsolvable");
    int optimal = *oracle.goal_cost;
    if (optimal <= 1)
        return 0;
    if (k_max < 0)
        k_max = problem.num_atoms();
    for (int k = 1; k <= k_max; ++k) {
        SearchResult result = iw_k(problem, k, limits);
        if (result.solved() && int(result.plan.size()) == optimal)
            return k;
    }
    throw PlanningError("effective_width: no IW(k) with k <= " + to_string(k_max) +
                        " finds an optimal plan");
}

}
