#ifndef GRAPH_POLICY_GRAPH_H
#define GRAPH_POLICY_GRAPH_H

#include "../rules/rules.h"

#include <functional>
#include <string>
#include <vector>

namespace wbp {

class ValuationSetMissing : public PlanningError {
public:
    explicit ValuationSetMissing(const std::string &msg) : PlanningError(msg) {}
};

/*
  Graph over the 2^|features| boolean valuations. An edge b -> b' labeled
  with a rule exists iff b is not a goal node, the rule's condition holds at
  b and (b,b') is compatible with its effects: set/clear pin the bit, inc
  forces "n=0" false, dec and ? leave the bit free, unmentioned features
  keep theirs. Goal nodes have no outgoing edges.
*/
struct PolicyGraph {
    RuleSet rules;
    std::vector<char> goal_node;  // size 2^|features|

    struct Edge {
        BoolValuation from, to;
        int rule;
    };
    std::vector<Edge> edges;
    std::vector<std::vector<int>> out;  // edge indices per node

    int num_nodes() const {
        return 1 << rules.features.size();
    }
    bool is_goal(BoolValuation b) const {
        return goal_node[b];
    }
    std::string node_label(BoolValuation b) const;
    std::string node_bits(BoolValuation b) const;
};

PolicyGraph build_policy_graph(const RuleSet &rules,
                               const std::vector<BoolValuation> &goal_nodes);

/*
  Sieve: repeatedly pick a strongly connected component and a numerical
  feature decremented on some alive edge of the component and incremented or
  unknown on none, and drop those decrementing edges. Terminating iff the
  remaining subgraph is acyclic.
*/
struct TerminationCertificate {
    bool terminating;

    struct Elimination {
        int feature;
        int component;                  // SCC id at the time of removal
        std::vector<int> removed_edges;
    };
    std::vector<Elimination> order;

    // A shortest surviving cycle when not terminating.
    std::vector<int> witness_cycle;
    std::string witness_summary;

    explicit operator bool() const {
        return terminating;
    }
};

TerminationCertificate sieve_terminates(const PolicyGraph &graph);

// Every node reachable from an initial node can reach a goal node.
bool check_goal_connected(const PolicyGraph &graph,
                          const std::vector<BoolValuation> &initial_nodes);

enum class Regularity {
    regular,
    weakly_regular,
    neither,
};

/*
  Syntactic termination conditions: (a) every rule decrements a numerical
  feature and increments none, or (b) an ordering of the numerical features
  exists where each rule decrements some feature while only features later
  in the ordering may grow. Weakly regular allows boolean-only rules on top
  of (b) as long as they alone cannot cycle the boolean valuations.
*/
Regularity check_regular(const RuleSet &rules);

std::string to_text(Regularity r);

// Graphviz export; node names are valuation bitstrings, edges carry the
// rule id and effect label.
std::string export_dot(const PolicyGraph &graph,
                       const std::vector<BoolValuation> &initial_nodes = {});

/*
  The order induced by a rule set on a finite valuation set: f' below f iff
  f is non-goal and (f,f') is compatible with some rule, transitively
  closed. A strict partial order whenever the rule set terminates.
*/
class InducedOrder {
    std::vector<FeatureValuation> valuations;
    std::vector<std::vector<uint64_t>> reach;  // closure bit rows
    int index_of(const FeatureValuation &f) const;

public:
    InducedOrder(const RuleSet &rules,
                 std::vector<FeatureValuation> valuation_set,
                 const std::function<bool(const FeatureValuation &)> &is_goal);

    // True iff f2 is reachable from f in one or more compatible steps,
    // i.e. f2 strictly precedes f. Throws ValuationSetMissing for
    // valuations outside the set.
    bool descends(const FeatureValuation &f, const FeatureValuation &f2) const;

    int size() const {
        return int(valuations.size());
    }
    bool acyclic() const;
};

}

#endif
