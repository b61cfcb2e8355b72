#ifndef POLICY_POLICY_H
#define POLICY_POLICY_H

#include "../rules/rules.h"
#include "../search/chains.h"
#include "../search/reachability.h"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace wbp {

class NotASolution : public PlanningError {
public:
    explicit NotASolution(const std::string &msg) : PlanningError(msg) {}
};

struct PolicyContext {
    const GroundProblem *problem;
    RuleSet rules;
    std::vector<Feature> features;  // aligned with rules.features

    FeatureValuation eval(const State &s) const {
        return eval_features(features, s);
    }
};

// Binds the rule set's declared features against the problem's hooks.
PolicyContext make_policy_context(const GroundProblem &problem, const RuleSet &rules);

// Indices of rules whose condition holds at f(s) and whose effect the value
// change from s to s2 satisfies, frame conditions included.
std::vector<int> transition_compatible(const PolicyContext &ctx, const State &s,
                                       const State &s2);

/*
  The subgraph of states reachable from init through policy-compatible
  transitions, cut at goal states (trajectories never continue past a goal).
*/
struct PolicyExploration {
    std::vector<State> states;
    std::vector<FeatureValuation> valuations;
    std::vector<bool> goal_state;
    struct Edge {
        int action;
        int target;
        std::vector<int> rules;
    };
    std::vector<std::vector<Edge>> edges;  // empty for goal states

    int find(const State &s) const;

private:
    friend PolicyExploration explore_policy(const PolicyContext &, long);
    std::unordered_map<State, int, BitsetHash> index;
};

PolicyExploration explore_policy(const PolicyContext &ctx, long cap = 100'000);

struct Trajectory {
    enum class Kind { goal_reached, stuck, infinite };
    std::vector<State> states;
    std::vector<std::pair<int, std::vector<int>>> transitions;  // action, rule ids
    Kind kind;
    std::optional<State> cycle_witness;  // repeated state for infinite ones
};

struct TrajectoryVerdict {
    bool solves;
    std::vector<Trajectory> trajectories;  // up to max_samples of them
    std::optional<State> stuck_witness;
    std::optional<State> cycle_witness;
};

/*
  Exhaustive check that all maximal policy trajectories reach the goal.
  The verdict is computed on the compatible-transition subgraph (a stuck
  non-goal node or a reachable cycle falsifies it); sample trajectories are
  collected up to max_samples for reporting.
*/
TrajectoryVerdict enumerate_maximal_trajectories(const PolicyContext &ctx,
                                                 long cap = 100'000,
                                                 int max_samples = 16);

// Boolean state features capturing chain progress: feature i is true when
// t_i holds and no later tuple does. Rules move feature i to feature i+1.
PolicyContext chain_to_policy(const GroundProblem &problem, const Chain &chain);

struct SeparationResult {
    bool ok;
    std::set<BoolValuation> kappa;
    std::string counterexample;
};

// kappa collects the boolean valuations of the reachable goal states over
// all given problems; fails if a reachable non-goal state shares one.
SeparationResult check_goal_separation(
    const std::vector<const GroundProblem *> &problems,
    const std::vector<std::vector<Feature>> &features, long cap = 2'000'000);

struct VerifierResult {
    bool ok;
    std::string witness;

    explicit operator bool() const {
        return ok;
    }
};

/*
  For every compatible transition (s,s') with s reachable, all states that
  reach f(s) in the fewest steps must reproduce the valuation change with a
  compatible transition of their own.
*/
VerifierResult check_markovian(const PolicyContext &ctx, long cap = 2'000'000);

// Requires a solving policy; true iff the longest induced goal-reaching
// trajectory matches the oracle optimum.
bool check_policy_optimal(const PolicyContext &ctx, const ReachabilityTable &oracle,
                          long cap = 100'000);

// Closed: every policy-reachable non-goal state has a compatible transition.
VerifierResult check_closed(const PolicyContext &ctx, long cap = 100'000);

// Sound: every reachable non-goal state with an applicable rule has a
// compatible transition.
VerifierResult check_sound(const PolicyContext &ctx, long cap = 2'000'000);

/*
  sub is a projection of super iff every maximal sub-trajectory is a maximal
  super-trajectory: each sub-edge must be super-compatible and each stuck
  sub-state must be stuck under super as well.
*/
VerifierResult check_projection(const PolicyContext &sub, const PolicyContext &super,
                                long cap = 100'000);

}

#endif
