#include "policy_graph.h"

#include <algorithm>
#include <cassert>
#include <deque>
#include <map>
#include <set>
#include <sstream>

using namespace std;

namespace wbp {

string PolicyGraph::node_label(BoolValuation b) const {
    string result;
    for (size_t i = 0; i < rules.features.size(); ++i) {
        if (i > 0)
            result += ",";
        bool bit = (b >> i) & 1;
        const FeatureDecl &decl = rules.features[i];
        if (decl.kind == FeatureKind::boolean)
            result += (bit ? "" : "-") + decl.name;
        else
            result += decl.name + (bit ? "=0" : ">0");
    }
    return result;
}

string PolicyGraph::node_bits(BoolValuation b) const {
    string bits;
    for (size_t i = 0; i < rules.features.size(); ++i)
        bits += ((b >> i) & 1) ? '1' : '0';
    return bits;
}

PolicyGraph build_policy_graph(const RuleSet &rules,
                               const vector<BoolValuation> &goal_nodes) {
    PolicyGraph graph;
    graph.rules = rules;
    int n = graph.num_nodes();
    graph.goal_node.assign(n, 0);
    for (BoolValuation b : goal_nodes)
        graph.goal_node[b] = 1;
    graph.out.resize(n);
    for (BoolValuation b = 0; b < BoolValuation(n); ++b) {
        if (graph.goal_node[b])
            continue;
        for (size_t r = 0; r < rules.rules.size(); ++r) {
            const Rule &rule = rules.rules[r];
            if (!conditions_hold_bool(rule, rules.features, b))
                continue;
            for (BoolValuation b2 = 0; b2 < BoolValuation(n); ++b2) {
                if (effects_compatible_bool(rule, rules.features, b, b2)) {
                    graph.out[b].push_back(int(graph.edges.size()));
                    graph.edges.push_back({b, b2, int(r)});
                }
            }
        }
    }
    return graph;
}

namespace {

// Kosaraju over a subset of alive edges.
vector<int> strongly_connected_components(const PolicyGraph &graph,
                                          const vector<char> &alive, int &count) {
    int n = graph.num_nodes();
    vector<vector<int>> forward(n), backward(n);
    for (size_t e = 0; e < graph.edges.size(); ++e) {
        if (!alive[e])
            continue;
        forward[graph.edges[e].from].push_back(graph.edges[e].to);
        backward[graph.edges[e].to].push_back(graph.edges[e].from);
    }
    vector<int> order;
    vector<char> used(n, 0);
    for (int start = 0; start < n; ++start) {
        if (used[start])
            continue;
        vector<pair<int, size_t>> stack = {{start, 0}};
        used[start] = 1;
        while (!stack.empty()) {
            auto &[node, pos] = stack.back();
            if (pos >= forward[node].size()) {
                order.push_back(node);
                stack.pop_back();
                continue;
            }
            int next = forward[node][pos++];
            if (!used[next]) {
                used[next] = 1;
                stack.emplace_back(next, 0);
            }
        }
    }
    vector<int> component(n, -1);
    count = 0;
    for (int i = n - 1; i >= 0; --i) {
        int root = order[i];
        if (component[root] >= 0)
            continue;
        deque<int> queue = {root};
        component[root] = count;
        while (!queue.empty()) {
            int node = queue.front();
            queue.pop_front();
            for (int next : backward[node]) {
                if (component[next] < 0) {
                    component[next] = count;
                    queue.push_back(next);
                }
            }
        }
        ++count;
    }
    return component;
}

bool has_cycle(const PolicyGraph &graph, const vector<char> &alive) {
    int count = 0;
    vector<int> component = strongly_connected_components(graph, alive, count);
    vector<int> size(count, 0);
    for (int node = 0; node < graph.num_nodes(); ++node)
        ++size[component[node]];
    for (size_t e = 0; e < graph.edges.size(); ++e) {
        if (!alive[e])
            continue;
        const auto &edge = graph.edges[e];
        if (edge.from == edge.to)
            return true;
        if (component[edge.from] == component[edge.to] && size[component[edge.from]] > 1)
            return true;
    }
    return false;
}

// Shortest alive cycle, as edge indices, via BFS from every node.
vector<int> shortest_cycle(const PolicyGraph &graph, const vector<char> &alive) {
    int n = graph.num_nodes();
    vector<int> best;
    for (int start = 0; start < n; ++start) {
        vector<int> via_edge(n, -1);
        vector<int> dist(n, -1);
        deque<int> queue = {start};
        dist[start] = 0;
        int closing = -1;
        while (!queue.empty() && closing < 0) {
            int node = queue.front();
            queue.pop_front();
            for (int e : graph.out[node]) {
                if (!alive[e])
                    continue;
                int next = graph.edges[e].to;
                if (next == start) {
                    closing = e;
                    break;
                }
                if (dist[next] < 0) {
                    dist[next] = dist[node] + 1;
                    via_edge[next] = e;
                    queue.push_back(next);
                }
            }
        }
        if (closing < 0)
            continue;
        vector<int> cycle = {closing};
        int node = graph.edges[closing].from;
        while (node != start) {
            cycle.push_back(via_edge[node]);
            node = graph.edges[via_edge[node]].from;
        }
        reverse(cycle.begin(), cycle.end());
        if (best.empty() || cycle.size() < best.size())
            best = cycle;
    }
    return best;
}

}

TerminationCertificate sieve_terminates(const PolicyGraph &graph) {
    TerminationCertificate cert;
    vector<char> alive(graph.edges.size(), 1);
    int num_features = int(graph.rules.features.size());

    bool removed = true;
    while (removed) {
        removed = false;
        int count = 0;
        vector<int> component = strongly_connected_components(graph, alive, count);
        for (int feature = 0; feature < num_features && !removed; ++feature) {
            if (graph.rules.features[feature].kind != FeatureKind::numerical)
                continue;
            // Per component: a dec edge and no inc/? edge on this feature.
            vector<char> has_dec(count, 0), has_grow(count, 0);
            for (size_t e = 0; e < graph.edges.size(); ++e) {
                if (!alive[e])
                    continue;
                const auto &edge = graph.edges[e];
                if (component[edge.from] != component[edge.to])
                    continue;
                const Effect *effect =
                    graph.rules.rules[edge.rule].effect_on(feature);
                if (!effect)
                    continue;
                if (effect->change == EffectChange::dec)
                    has_dec[component[edge.from]] = 1;
                else if (effect->change == EffectChange::inc ||
                         effect->change == EffectChange::num_unknown)
                    has_grow[component[edge.from]] = 1;
            }
            for (int c = 0; c < count && !removed; ++c) {
                if (!has_dec[c] || has_grow[c])
                    continue;
                TerminationCertificate::Elimination elim{feature, c, {}};
                for (size_t e = 0; e < graph.edges.size(); ++e) {
                    if (!alive[e])
                        continue;
                    const auto &edge = graph.edges[e];
                    if (component[edge.from] != c || component[edge.to] != c)
                        continue;
                    const Effect *effect =
                        graph.rules.rules[edge.rule].effect_on(feature);
                    if (effect && effect->change == EffectChange::dec) {
                        alive[e] = 0;
                        elim.removed_edges.push_back(int(e));
                    }
                }
                cert.order.push_back(elim);
                removed = true;
            }
        }
    }

    cert.terminating = !has_cycle(graph, alive);
    if (!cert.terminating) {
        cert.witness_cycle = shortest_cycle(graph, alive);
        ostringstream summary;
        summary << "cycle:";
        for (int e : cert.witness_cycle)
            summary << " " << graph.node_label(graph.edges[e].from) << " -["
                    << graph.rules.rules[graph.edges[e].rule].id << ": "
                    << format_effects(graph.rules, graph.rules.rules[graph.edges[e].rule])
                    << "]->";
        if (!cert.witness_cycle.empty())
            summary << " "
                    << graph.node_label(graph.edges[cert.witness_cycle.back()].to);
        cert.witness_summary = summary.str();
    }
    return cert;
}

bool check_goal_connected(const PolicyGraph &graph,
                          const vector<BoolValuation> &initial_nodes) {
    int n = graph.num_nodes();
    // Forward reachability from the initial nodes.
    vector<char> forward(n, 0);
    deque<int> queue;
    for (BoolValuation b : initial_nodes) {
        if (!forward[b]) {
            forward[b] = 1;
            queue.push_back(int(b));
        }
    }
    while (!queue.empty()) {
        int node = queue.front();
        queue.pop_front();
        for (int e : graph.out[node]) {
            int next = graph.edges[e].to;
            if (!forward[next]) {
                forward[next] = 1;
                queue.push_back(next);
            }
        }
    }
    // Backward reachability from the goal nodes.
    vector<vector<int>> incoming(n);
    for (const auto &edge : graph.edges)
        incoming[edge.to].push_back(edge.from);
    vector<char> to_goal(n, 0);
    for (int node = 0; node < n; ++node) {
        if (graph.goal_node[node]) {
            to_goal[node] = 1;
            queue.push_back(node);
        }
    }
    while (!queue.empty()) {
        int node = queue.front();
        queue.pop_front();
        for (int prev : incoming[node]) {
            if (!to_goal[prev]) {
                to_goal[prev] = 1;
                queue.push_back(prev);
            }
        }
    }
    for (int node = 0; node < n; ++node)
        if (forward[node] && !to_goal[node])
            return false;
    return true;
}

namespace {

bool rule_is_boolean_only(const RuleSet &rs, const Rule &rule) {
    for (const Effect &e : rule.effects)
        if (rs.features[e.feature].kind == FeatureKind::numerical)
            return false;
    return true;
}

// Does an ordering of the numerical features exist where every rule in
// `rules` decrements some feature while growing only later ones?
bool ordered_decrements_exist(const RuleSet &rs, const vector<const Rule *> &rules) {
    vector<int> numerical;
    for (size_t i = 0; i < rs.features.size(); ++i)
        if (rs.features[i].kind == FeatureKind::numerical)
            numerical.push_back(int(i));
    if (numerical.empty())
        return rules.empty();
    sort(numerical.begin(), numerical.end());
    do {
        vector<int> position(rs.features.size(), -1);
        for (size_t i = 0; i < numerical.size(); ++i)
            position[numerical[i]] = int(i);
        bool all_ok = true;
        for (const Rule *rule : rules) {
            int first_grow = int(numerical.size());
            for (const Effect &e : rule->effects) {
                if (position[e.feature] < 0)
                    continue;
                if (e.change == EffectChange::inc || e.change == EffectChange::num_unknown)
                    first_grow = min(first_grow, position[e.feature]);
            }
            bool rule_ok = false;
            for (const Effect &e : rule->effects) {
                if (e.change == EffectChange::dec && position[e.feature] < first_grow) {
                    rule_ok = true;
                    break;
                }
            }
            if (!rule_ok) {
                all_ok = false;
                break;
            }
        }
        if (all_ok)
            return true;
    } while (next_permutation(numerical.begin(), numerical.end()));
    return false;
}

}

Regularity check_regular(const RuleSet &rules) {
    // (a): every rule decrements something and grows nothing.
    bool condition_a = !rules.rules.empty();
    for (const Rule &rule : rules.rules) {
        bool has_dec = false, has_grow = false;
        for (const Effect &e : rule.effects) {
            if (e.change == EffectChange::dec)
                has_dec = true;
            if (e.change == EffectChange::inc || e.change == EffectChange::num_unknown)
                has_grow = true;
        }
        if (!has_dec || has_grow) {
            condition_a = false;
            break;
        }
    }
    if (condition_a)
        return Regularity::regular;

    vector<const Rule *> numeric_rules, boolean_rules;
    for (const Rule &rule : rules.rules) {
        if (rule_is_boolean_only(rules, rule))
            boolean_rules.push_back(&rule);
        else
            numeric_rules.push_back(&rule);
    }

    if (boolean_rules.empty()) {
        if (ordered_decrements_exist(rules, numeric_rules))
            return Regularity::regular;
        return Regularity::neither;
    }

    if (!ordered_decrements_exist(rules, numeric_rules))
        return Regularity::neither;

    // Boolean-only rules may not cycle the boolean valuations on their own.
    RuleSet boolean_part;
    boolean_part.name = rules.name + "_boolean_part";
    boolean_part.features = rules.features;
    for (const Rule *rule : boolean_rules)
        boolean_part.rules.push_back(*rule);
    PolicyGraph graph = build_policy_graph(boolean_part, {});
    vector<char> alive(graph.edges.size(), 1);
    if (has_cycle(graph, alive))
        return Regularity::neither;
    return Regularity::weakly_regular;
}

string to_text(Regularity r) {
    switch (r) {
    case Regularity::regular: return "regular";
    case Regularity::weakly_regular: return "weakly_regular";
    case Regularity::neither: return "neither";
    }
    return {};
}

string export_dot(const PolicyGraph &graph, const vector<BoolValuation> &initial_nodes) {
    set<BoolValuation> initial(initial_nodes.begin(), initial_nodes.end());
    ostringstream out;
    out << "digraph policy {\n";
    for (int node = 0; node < graph.num_nodes(); ++node) {
        out << "    n" << graph.node_bits(BoolValuation(node))
            << " [label=\"" << graph.node_label(BoolValuation(node)) << "\"";
        if (graph.goal_node[node])
            out << " shape=doublecircle";
        if (initial.count(BoolValuation(node)))
            out << " style=filled";
        out << "];\n";
    }
    for (const auto &edge : graph.edges) {
        const Rule &rule = graph.rules.rules[edge.rule];
        out << "    n" << graph.node_bits(edge.from) << " -> n"
            << graph.node_bits(edge.to) << " [label=\"" << rule.id << ": "
            << format_effects(graph.rules, rule) << "\"];\n";
    }
    out << "}\n";
    return out.str();
}

InducedOrder::InducedOrder(const RuleSet &rules, vector<FeatureValuation> valuation_set,
                           const function<bool(const FeatureValuation &)> &is_goal)
    : valuations(std::move(valuation_set)) {
    sort(valuations.begin(), valuations.end());
    valuations.erase(unique(valuations.begin(), valuations.end()), valuations.end());
    int n = int(valuations.size());
    int num_features = valuations.empty() ? 0 : int(valuations[0].size());
    int words = (n + 63) / 64;
    reach.assign(n, vector<uint64_t>(words, 0));
    for (int i = 0; i < n; ++i) {
        if (is_goal(valuations[i]))
            continue;
        for (int j = 0; j < n; ++j) {
            for (const Rule &rule : rules.rules) {
                if (pair_compatible(rule, num_features, valuations[i], valuations[j])) {
                    reach[i][j >> 6] |= uint64_t(1) << (j & 63);
                    break;
                }
            }
        }
    }
    // Transitive closure, bit rows.
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            if ((reach[i][k >> 6] >> (k & 63)) & 1)
                for (int w = 0; w < words; ++w)
                    reach[i][w] |= reach[k][w];
}

int InducedOrder::index_of(const FeatureValuation &f) const {
    auto it = lower_bound(valuations.begin(), valuations.end(), f);
    if (it == valuations.end() || *it != f)
        throw ValuationSetMissing("valuation is not in the enumerated set");
    return int(it - valuations.begin());
}

bool InducedOrder::descends(const FeatureValuation &f, const FeatureValuation &f2) const {
    int i = index_of(f), j = index_of(f2);
    return (reach[i][j >> 6] >> (j & 63)) & 1;
}

bool InducedOrder::acyclic() const {
    for (size_t i = 0; i < valuations.size(); ++i)
        if ((reach[i][i >> 6] >> (i & 63)) & 1)
            return false;
    return true;
}

}
