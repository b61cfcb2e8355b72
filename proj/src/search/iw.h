#ifndef SEARCH_IW_H
#define SEARCH_IW_H

#include "novelty.h"
#include "reachability.h"
#include "../core/feature.h"

#include <optional>
#include <vector>

namespace wbp {

struct SearchLimits {
    long state_cap = 2'000'000;
};

enum class SearchStatus {
    solved,
    exhausted,    // frontier emptied with nothing pruned: no solution exists
    pruned_out,   // frontier emptied after pruning
};

struct SearchResult {
    SearchStatus status = SearchStatus::pruned_out;
    std::vector<int> plan;
    long expanded = 0;
    long generated = 0;
    int observed_b = 0;           // max applicable actions over expanded states
    std::optional<bool> optimal;  // filled in by callers that consult the oracle

    bool solved() const {
        return status == SearchStatus::solved;
    }
};

/*
  Breadth-first search pruning states that make no new atom k-tuple true.
  Novelty is checked at generation time, before enqueueing; goals are also
  detected at generation time, so the first goal generated ends the search
  and its path is the plan.
*/
SearchResult iw_k(const GroundProblem &problem, const State &init,
                  const GoalPredicate &goal, int k,
                  const SearchLimits &limits = {});
SearchResult iw_k(const GroundProblem &problem, int k,
                  const SearchLimits &limits = {});

// The width-0 pre-pass: solved iff the goal holds at init or one step away.
SearchResult zero_step_check(const GroundProblem &problem, const State &init,
                             const GoalPredicate &goal);

struct IwResult {
    int k_star;  // least solving k; num_atoms + 1 when unsolvable
    SearchResult result;
};

// Runs the 0/1-step check and then IW(k) for k = 1.. until solved.
IwResult iw(const GroundProblem &problem, const State &init,
            const GoalPredicate &goal, int k_max = -1,
            const SearchLimits &limits = {});
IwResult iw(const GroundProblem &problem, int k_max = -1,
            const SearchLimits &limits = {});

// Breadth-first search pruning states whose full feature valuation has been
// seen before.
SearchResult iw_phi(const GroundProblem &problem, const std::vector<Feature> &features,
                    const State &init, const GoalPredicate &goal,
                    const SearchLimits &limits = {});
SearchResult iw_phi(const GroundProblem &problem, const std::vector<Feature> &features,
                    const SearchLimits &limits = {});

/*
  Least k for which IW(k) returns a plan of oracle-optimal length. An
  operational upper-bound proxy for the exact width; the oracle table must
  be built over the problem's own init and goal.
*/
int effective_width(const GroundProblem &problem, const ReachabilityTable &oracle,
                    int k_max = -1, const SearchLimits &limits = {});

}

#endif
