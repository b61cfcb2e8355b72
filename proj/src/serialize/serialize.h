#ifndef SERIALIZE_SERIALIZE_H
#define SERIALIZE_SERIALIZE_H

#include "../graph/policy_graph.h"
#include "../policy/policy.h"
#include "../search/chains.h"
#include "../search/iw.h"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace wbp {

class IllFormedSketch : public PlanningError {
public:
    explicit IllFormedSketch(const std::string &msg) : PlanningError(msg) {}
};

class EpisodeFailed : public PlanningError {
public:
    explicit EpisodeFailed(const std::string &msg) : PlanningError(msg) {}
};

/*
  Strict partial order over feature valuations, f' below f. Kinds:
  lexicographic over named features (strict partial order by construction),
  the goal-counter special case, the transitive closure of rule-compatible
  pairs (an order whenever the rule set terminates), and the direct
  rule-compatibility test used by the sketch-driven solver (not transitive).
  precedes() calls are counted so order-test cost can be reported.
*/
class PrecedenceOracle {
public:
    enum class Kind { lexicographic, goal_counter, rule_closure, rule_direct };

    static PrecedenceOracle lexicographic(std::vector<int> feature_indices);
    static PrecedenceOracle goal_counter(int feature_index);
    static PrecedenceOracle rule_closure(const RuleSet &rules,
                                         std::shared_ptr<InducedOrder> order);
    static PrecedenceOracle rule_direct(const RuleSet &rules);

    // True iff f2 strictly precedes f (f2 "better").
    bool precedes(const FeatureValuation &f2, const FeatureValuation &f) const;

    Kind kind() const {
        return oracle_kind;
    }
    long tests() const {
        return test_count;
    }

private:
    Kind oracle_kind;
    std::vector<int> lex_features;
    RuleSet rules;
    std::shared_ptr<InducedOrder> closure;
    mutable long test_count = 0;
};

// Order built from a rule set over an instance's reachable valuations; goal
// valuations are those of the reachable goal states.
PrecedenceOracle closure_order(const GroundProblem &problem, const PolicyContext &ctx,
                               long cap = 2'000'000);

struct SubproblemReport {
    State start;
    State achieved;
    int width_used = 0;     // k of the solving IW call
    long expanded = 0;
    long generated = 0;
    int plan_length = 0;
    std::optional<int> rule_fired;  // sketch episodes
};

struct SiwResult {
    bool solved = false;
    std::vector<int> plan;
    std::vector<SubproblemReport> episodes;
    std::optional<State> stuck_state;  // set when an episode failed
    long order_tests = 0;

    int max_episode_width() const {
        int best = 0;
        for (const auto &episode : episodes)
            best = std::max(best, episode.width_used);
        return best;
    }
};

/*
  Serialized IW: repeat IW episodes from the current state towards any state
  that is a problem goal or order-smaller than the episode start. Episodes
  search with IW(0), IW(1), ... up to k_cap; breadth-first order makes each
  achieved state a closest qualifying one whenever the subproblem width is
  within the cap.
*/
SiwResult siw_phi(const GroundProblem &problem, const std::vector<Feature> &features,
                  const PrecedenceOracle &order, int k_cap = 2,
                  const SearchLimits &limits = {});

/*
  Sketch-driven variant: the episode target is a state whose valuation pair
  with the episode start is compatible with a sketch rule (constant-time
  test). Requires a well-formed sketch: the rules interpreted as a policy
  must pass the termination sieve over the given goal valuations.
*/
SiwResult siw_r(const PolicyContext &sketch, const std::vector<BoolValuation> &goal_nodes,
                int k_cap = 2, const SearchLimits &limits = {});

/*
  The exact decomposition fixpoint: start states of all subproblems. From
  each member, every non-goal state at the shortest order-improving
  distance joins, ties included, unless a problem goal is strictly closer.
*/
std::vector<State> decompose(const GroundProblem &problem,
                             const std::vector<Feature> &features,
                             const PrecedenceOracle &order, long cap = 100'000,
                             const SearchLimits &limits = {});

// Max exact width over the decomposition's subproblems; 0 for an empty
// decomposition (goal at init).
WidthResult serialized_width(const GroundProblem &problem,
                             const std::vector<Feature> &features,
                             const PrecedenceOracle &order, int k_max = 2,
                             long decompose_cap = 100'000,
                             const WidthLimits &limits = {});

/*
  Max width of the rule-induced subproblem over reachable states (all of
  them, per the definition). fast_mode restricts the max to decomposition
  states, a cheaper lower bound.
*/
WidthResult sketch_width(const PolicyContext &sketch, int k_max = 2,
                         bool fast_mode = false, long state_cap = 2'000'000,
                         const WidthLimits &limits = {});

}

#endif
