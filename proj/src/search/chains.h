#ifndef SEARCH_CHAINS_H
#define SEARCH_CHAINS_H

#include "reachability.h"

#include <optional>
#include <string>
#include <vector>

namespace wbp {

class TupleBudgetExceeded : public PlanningError {
public:
    explicit TupleBudgetExceeded(const std::string &msg) : PlanningError(msg) {}
};

/*
  A chain of atom tuples t_0..t_m. Admissible chains witness the problem
  width: t_0 holds initially, each step extends the optimal plans by one
  action, and the optimal plans for t_m solve the problem optimally.
*/
struct Chain {
    std::vector<std::vector<AtomId>> tuples;

    int size() const {
        int best = 0;
        for (const auto &t : tuples)
            best = std::max(best, int(t.size()));
        return best;
    }
};

struct ChainCheck {
    bool ok;
    std::string reason;  // counterexample description when !ok

    explicit operator bool() const {
        return ok;
    }
};

// The oracle table must be over the problem's init and full state space.
ChainCheck check_admissible(const ReachabilityTable &oracle, const Chain &chain);
ChainCheck check_feasible(const ReachabilityTable &oracle, const Chain &chain);

struct WidthResult {
    std::optional<int> width;  // empty: exceeds k_max
    int k_max;

    bool not_within() const {
        return !width.has_value();
    }
    bool operator==(const WidthResult &other) const {
        return width == other.width && k_max == other.k_max;
    }
};

std::string to_text(const WidthResult &w);

struct WidthLimits {
    long state_cap = 2'000'000;
    long tuple_budget = 2'000'000;
};

/*
  Least k <= k_max admitting an admissible chain, found by layered
  reachability over tuples of size <= k: layer d holds the tuples first true
  at depth d, an edge t -> t' requires every depth-d state containing t to
  have a successor containing t', and accepting tuples are those whose
  depth-optimal states are all goals at the problem's optimal cost.

  The per-pair universal check makes this exhaustive machinery suitable for
  desk-scale instances only.
*/
WidthResult exact_width(const GroundProblem &problem, const State &init,
                        const GoalPredicate &goal, int k_max,
                        const WidthLimits &limits = {});
WidthResult exact_width(const GroundProblem &problem, int k_max,
                        const WidthLimits &limits = {});

}

#endif
