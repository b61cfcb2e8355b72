#include "features.h"

#include <algorithm>
#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <set>

using namespace std;

namespace wbp {

namespace {

struct ParsedAtom {
    string predicate;
    vector<string> args;
};

optional<ParsedAtom> parse_atom_name(const string &name) {
    size_t open = name.find('(');
    if (open == string::npos)
        return ParsedAtom{name, {}};
    if (name.back() != ')')
        return nullopt;
    ParsedAtom atom;
    atom.predicate = name.substr(0, open);
    string args = name.substr(open + 1, name.size() - open - 2);
    string current;
    for (char c : args) {
        if (c == ',') {
            atom.args.push_back(current);
            current.clear();
        } else {
            current += c;
        }
    }
    if (!current.empty() || !args.empty())
        atom.args.push_back(current);
    return atom;
}

// Ids of atoms pred(...) grouped by predicate.
map<string, vector<AtomId>> atoms_by_predicate(const GroundProblem &problem) {
    map<string, vector<AtomId>> result;
    for (int id = 0; id < problem.num_atoms(); ++id) {
        auto parsed = parse_atom_name(problem.universe.name_of(id));
        if (parsed)
            result[parsed->predicate].push_back(id);
    }
    return result;
}

/*
  Static cell graph recovered from the move actions: an action whose
  precondition has exactly one at(c) atom and whose add list has an at(c')
  atom yields the edge c -> c'. Distances are unit-step BFS distances.
*/
struct CellGraph {
    vector<string> cells;
    map<string, int> cell_index;
    vector<vector<int>> adjacent;
    vector<AtomId> at_atom;  // at(c) id per cell

    explicit CellGraph(const GroundProblem &problem) {
        for (int id = 0; id < problem.num_atoms(); ++id) {
            auto parsed = parse_atom_name(problem.universe.name_of(id));
            if (parsed && parsed->predicate == "at" && parsed->args.size() == 1) {
                cell_index[parsed->args[0]] = int(cells.size());
                cells.push_back(parsed->args[0]);
                at_atom.push_back(id);
            }
        }
        adjacent.resize(cells.size());
        for (const GroundAction &action : problem.actions) {
            optional<int> from, to;
            for (AtomId id : action.pre) {
                auto parsed = parse_atom_name(problem.universe.name_of(id));
                if (parsed && parsed->predicate == "at" && parsed->args.size() == 1)
                    from = cell_index.at(parsed->args[0]);
            }
            for (AtomId id : action.add) {
                auto parsed = parse_atom_name(problem.universe.name_of(id));
                if (parsed && parsed->predicate == "at" && parsed->args.size() == 1)
                    to = cell_index.at(parsed->args[0]);
            }
            if (from && to && *from != *to)
                adjacent[*from].push_back(*to);
        }
    }

    bool empty() const {
        return cells.empty();
    }

    int agent_cell(const State &s) const {
        for (size_t i = 0; i < at_atom.size(); ++i)
            if (s.test(at_atom[i]))
                return int(i);
        throw EvaluatorUnbound("state has no at() atom");
    }

    // BFS distances from one cell; unreachable cells get -1.
    vector<int> distances_from(int cell) const {
        vector<int> dist(cells.size(), -1);
        deque<int> queue = {cell};
        dist[cell] = 0;
        while (!queue.empty()) {
            int c = queue.front();
            queue.pop_front();
            for (int next : adjacent[c]) {
                if (dist[next] < 0) {
                    dist[next] = dist[c] + 1;
                    queue.push_back(next);
                }
            }
        }
        return dist;
    }
};

struct BlocksVocabulary {
    // on(a,b) atom ids by the block below and by the block above.
    map<string, vector<pair<AtomId, string>>> on_top_of;     // below -> (atom, above)
    map<string, vector<pair<AtomId, string>>> on_below_of;   // above -> (atom, below)
    vector<AtomId> hold_atoms;
    map<string, AtomId> hold_of;
    set<string> blocks;

    explicit BlocksVocabulary(const GroundProblem &problem) {
        for (int id = 0; id < problem.num_atoms(); ++id) {
            auto parsed = parse_atom_name(problem.universe.name_of(id));
            if (!parsed)
                continue;
            if (parsed->predicate == "on" && parsed->args.size() == 2) {
                on_top_of[parsed->args[1]].emplace_back(id, parsed->args[0]);
                on_below_of[parsed->args[0]].emplace_back(id, parsed->args[1]);
                blocks.insert(parsed->args[0]);
                blocks.insert(parsed->args[1]);
            } else if (parsed->predicate == "hold" && parsed->args.size() == 1) {
                hold_atoms.push_back(id);
                hold_of[parsed->args[0]] = id;
                blocks.insert(parsed->args[0]);
            }
        }
    }

    bool empty() const {
        return on_top_of.empty();
    }

    // The block directly on top of `block` in s, if any.
    optional<string> above(const State &s, const string &block) const {
        auto it = on_top_of.find(block);
        if (it == on_top_of.end())
            return nullopt;
        for (const auto &[atom, top] : it->second)
            if (s.test(atom))
                return top;
        return nullopt;
    }

    optional<string> below(const State &s, const string &block) const {
        auto it = on_below_of.find(block);
        if (it == on_below_of.end())
            return nullopt;
        for (const auto &[atom, bottom] : it->second)
            if (s.test(atom))
                return bottom;
        return nullopt;
    }
};

Feature make_hold_any(const GroundProblem &problem) {
    auto by_pred = atoms_by_predicate(problem);
    auto it = by_pred.find("hold");
    if (it == by_pred.end())
        throw UnknownHook("hook H needs hold() atoms");
    Bitset mask(problem.num_atoms());
    for (AtomId id : it->second)
        mask.set(id);
    return {"H", FeatureKind::boolean,
            [mask](const State &s) {return s.intersects(mask) ? 1 : 0;}};
}

// Number of blocks transitively above the block named by the clear() goal.
Feature make_blocks_above(const GroundProblem &problem) {
    optional<string> target;
    for (AtomId id : problem.goal) {
        auto parsed = parse_atom_name(problem.universe.name_of(id));
        if (parsed && parsed->predicate == "clear" && parsed->args.size() == 1)
            target = parsed->args[0];
    }
    if (!target)
        throw UnknownHook("hook n needs a clear() goal atom");
    auto vocab = make_shared<BlocksVocabulary>(problem);
    string block = *target;
    return {"n", FeatureKind::numerical, [vocab, block](const State &s) {
        int count = 0;
        string current = block;
        while (auto top = vocab->above(s, current)) {
            ++count;
            current = *top;
        }
        return count;
    }};
}

/*
  Misplaced-block counter over the goal's on() atoms, resolved top-down:
  a block with an on-goal is well placed iff it sits on its target and the
  target is well placed; a block without an on-goal is well placed iff no
  block below it is misplaced. Held blocks are above nothing, so a held
  unconstrained block is well placed while a held constrained one is not.
*/
Feature make_misplaced_count(const GroundProblem &problem) {
    map<string, string> target;
    for (AtomId id : problem.goal) {
        auto parsed = parse_atom_name(problem.universe.name_of(id));
        if (parsed && parsed->predicate == "on" && parsed->args.size() == 2)
            target[parsed->args[0]] = parsed->args[1];
    }
    if (target.empty())
        throw UnknownHook("hook #m needs on() goal atoms");
    auto vocab = make_shared<BlocksVocabulary>(problem);
    map<string, AtomId> on_atom;
    for (AtomId id = 0; id < problem.num_atoms(); ++id) {
        auto parsed = parse_atom_name(problem.universe.name_of(id));
        if (parsed && parsed->predicate == "on" && parsed->args.size() == 2)
            on_atom[parsed->args[0] + "," + parsed->args[1]] = id;
    }
    auto targets = make_shared<map<string, string>>(target);
    auto on_ids = make_shared<map<string, AtomId>>(on_atom);
    return {"#m", FeatureKind::numerical, [vocab, targets, on_ids](const State &s) {
        map<string, int> memo;  // -1 unresolved guard, 0 misplaced, 1 well placed
        auto well_placed = [&](auto &&self, const string &block) -> bool {
            auto it = memo.find(block);
            if (it != memo.end())
                return it->second == 1;
            memo[block] = -1;
            bool result;
            auto t = targets->find(block);
            if (t != targets->end()) {
                auto atom = on_ids->find(block + "," + t->second);
                result = atom != on_ids->end() && s.test(atom->second) &&
                    self(self, t->second);
            } else {
                auto under = vocab->below(s, block);
                result = !under || self(self, *under);
            }
            memo[block] = result ? 1 : 0;
            return result;
        };
        int misplaced = 0;
        for (const string &block : vocab->blocks)
            if (!well_placed(well_placed, block))
                ++misplaced;
        return misplaced;
    }};
}

struct BoxesVocabulary {
    vector<pair<AtomId, vector<AtomId>>> boxes;  // ontable atom, in() atoms

    explicit BoxesVocabulary(const GroundProblem &problem) {
        map<string, AtomId> ontable;
        map<string, vector<AtomId>> contents;
        for (int id = 0; id < problem.num_atoms(); ++id) {
            auto parsed = parse_atom_name(problem.universe.name_of(id));
            if (!parsed)
                continue;
            if (parsed->predicate == "ontable" && parsed->args.size() == 1)
                ontable[parsed->args[0]] = id;
            else if (parsed->predicate == "in" && parsed->args.size() == 2)
                contents[parsed->args[1]].push_back(id);
        }
        for (const auto &[box, atom] : ontable)
            boxes.emplace_back(atom, contents[box]);
    }
};

Feature make_boxes_min_marbles(const GroundProblem &problem) {
    auto vocab = make_shared<BoxesVocabulary>(problem);
    if (vocab->boxes.empty())
        throw UnknownHook("hook m needs ontable()/in() atoms");
    return {"m", FeatureKind::numerical, [vocab](const State &s) {
        int best = -1;
        for (const auto &[ontable, contents] : vocab->boxes) {
            if (!s.test(ontable))
                continue;
            int count = 0;
            for (AtomId atom : contents)
                if (s.test(atom))
                    ++count;
            if (best < 0 || count < best)
                best = count;
        }
        return best < 0 ? 0 : best;
    }};
}

Feature make_boxes_left(const GroundProblem &problem) {
    auto vocab = make_shared<BoxesVocabulary>(problem);
    if (vocab->boxes.empty())
        throw UnknownHook("hook n needs ontable() atoms");
    return {"n", FeatureKind::numerical, [vocab](const State &s) {
        int count = 0;
        for (const auto &[ontable, contents] : vocab->boxes)
            if (s.test(ontable))
                ++count;
        return count;
    }};
}

struct DeliveryVocabulary {
    CellGraph graph;
    int target_cell = -1;
    // Per package: hold atom and atp(p,c) atom per cell index.
    struct Package {
        AtomId hold = -1;
        vector<AtomId> atp;  // by cell index
        AtomId at_target = -1;
    };
    vector<Package> packages;

    explicit DeliveryVocabulary(const GroundProblem &problem) : graph(problem) {
        map<string, Package> by_name;
        for (int id = 0; id < problem.num_atoms(); ++id) {
            auto parsed = parse_atom_name(problem.universe.name_of(id));
            if (!parsed)
                continue;
            if (parsed->predicate == "target" && parsed->args.size() == 1) {
                target_cell = graph.cell_index.at(parsed->args[0]);
            } else if (parsed->predicate == "hold" && parsed->args.size() == 1) {
                by_name[parsed->args[0]].hold = id;
            } else if (parsed->predicate == "atp" && parsed->args.size() == 2) {
                Package &pkg = by_name[parsed->args[0]];
                if (pkg.atp.empty())
                    pkg.atp.assign(graph.cells.size(), -1);
                pkg.atp[graph.cell_index.at(parsed->args[1])] = id;
            }
        }
        for (auto &[name, pkg] : by_name) {
            if (target_cell >= 0 && !pkg.atp.empty())
                pkg.at_target = pkg.atp[target_cell];
            packages.push_back(pkg);
        }
    }

    bool valid() const {
        return !graph.empty() && target_cell >= 0 && !packages.empty();
    }

    bool holding(const State &s) const {
        for (const Package &pkg : packages)
            if (pkg.hold >= 0 && s.test(pkg.hold))
                return true;
        return false;
    }

    bool delivered(const State &s, const Package &pkg) const {
        return pkg.at_target >= 0 && s.test(pkg.at_target);
    }
};

shared_ptr<DeliveryVocabulary> delivery_vocab(const GroundProblem &problem,
                                              const string &hook) {
    auto vocab = make_shared<DeliveryVocabulary>(problem);
    if (!vocab->valid())
        throw UnknownHook("hook " + hook + " needs at()/atp()/target() atoms");
    return vocab;
}

// Distance to the nearest undelivered package on the floor; zero while
// holding one or when none remains.
Feature make_package_distance(const GroundProblem &problem) {
    auto vocab = delivery_vocab(problem, "p");
    return {"p", FeatureKind::numerical, [vocab](const State &s) {
        if (vocab->holding(s))
            return 0;
        vector<int> dist = vocab->graph.distances_from(vocab->graph.agent_cell(s));
        int best = -1;
        for (const auto &pkg : vocab->packages) {
            for (size_t cell = 0; cell < pkg.atp.size(); ++cell) {
                if (int(cell) == vocab->target_cell || pkg.atp[cell] < 0 ||
                    !s.test(pkg.atp[cell]))
                    continue;
                if (dist[cell] >= 0 && (best < 0 || dist[cell] < best))
                    best = dist[cell];
            }
        }
        return best < 0 ? 0 : best;
    }};
}

Feature make_target_distance(const GroundProblem &problem) {
    auto vocab = delivery_vocab(problem, "t");
    return {"t", FeatureKind::numerical, [vocab](const State &s) {
        vector<int> dist = vocab->graph.distances_from(vocab->graph.agent_cell(s));
        int d = dist[vocab->target_cell];
        return d < 0 ? 0 : d;
    }};
}

Feature make_undelivered_count(const GroundProblem &problem) {
    auto vocab = delivery_vocab(problem, "n");
    return {"n", FeatureKind::numerical, [vocab](const State &s) {
        int count = 0;
        for (const auto &pkg : vocab->packages)
            if (!vocab->delivered(s, pkg))
                ++count;
        return count;
    }};
}

// Manhattan-style BFS distance to the goal coordinates in the grid domain.
Feature make_grid_goal_distance(const GroundProblem &problem) {
    map<AtomId, int> x_value, y_value;
    for (int id = 0; id < problem.num_atoms(); ++id) {
        auto parsed = parse_atom_name(problem.universe.name_of(id));
        if (!parsed || parsed->args.size() != 1)
            continue;
        if (parsed->predicate == "x")
            x_value[id] = stoi(parsed->args[0]);
        else if (parsed->predicate == "y")
            y_value[id] = stoi(parsed->args[0]);
    }
    if (x_value.empty() || y_value.empty())
        throw UnknownHook("hook d needs x()/y() atoms");
    int gx = -1, gy = -1;
    for (AtomId id : problem.goal) {
        if (x_value.count(id))
            gx = x_value[id];
        if (y_value.count(id))
            gy = y_value[id];
    }
    if (gx < 0 || gy < 0)
        throw UnknownHook("hook d needs x()/y() goal atoms");
    auto xs = make_shared<map<AtomId, int>>(x_value);
    auto ys = make_shared<map<AtomId, int>>(y_value);
    return {"d", FeatureKind::numerical, [xs, ys, gx, gy](const State &s) {
        int x = -1, y = -1;
        for (const auto &[atom, value] : *xs)
            if (s.test(atom))
                x = value;
        for (const auto &[atom, value] : *ys)
            if (s.test(atom))
                y = value;
        if (x < 0 || y < 0)
            throw EvaluatorUnbound("state has no x()/y() atoms");
        return abs(x - gx) + abs(y - gy);
    }};
}

Feature make_goal_count(const GroundProblem &problem, const string &name) {
    Bitset goal = problem.goal_mask;
    int goal_size = goal.count();
    return {name, FeatureKind::numerical, [goal, goal_size](const State &s) {
        State achieved = s;
        achieved &= goal;
        return goal_size - achieved.count();
    }};
}

Feature make_count(const GroundProblem &problem, const FeatureSpec &spec) {
    Bitset mask(problem.num_atoms());
    bool predicate_seen = false;
    for (int id = 0; id < problem.num_atoms(); ++id) {
        auto parsed = parse_atom_name(problem.universe.name_of(id));
        if (!parsed || parsed->predicate != spec.predicate)
            continue;
        predicate_seen = true;
        if (parsed->args.size() != spec.pattern.size())
            throw ArityMismatch("count(" + spec.predicate + "): pattern has " +
                                to_string(spec.pattern.size()) + " arguments, atom " +
                                problem.universe.name_of(id) + " has " +
                                to_string(parsed->args.size()));
        bool match = true;
        for (size_t i = 0; i < spec.pattern.size(); ++i)
            if (spec.pattern[i] != "?" && spec.pattern[i] != parsed->args[i])
                match = false;
        if (match)
            mask.set(id);
    }
    if (!predicate_seen)
        throw UnknownHook("count: no atoms with predicate '" + spec.predicate + "'");
    return {spec.name, FeatureKind::numerical, [mask](const State &s) {
        State hits = s;
        hits &= mask;
        return hits.count();
    }};
}

Feature make_builtin(const GroundProblem &problem, const string &name) {
    const string &domain = problem.domain;
    if (name == "#g")
        return make_goal_count(problem, name);
    if (name == "#m")
        return make_misplaced_count(problem);
    if (name == "H")
        return make_hold_any(problem);
    if (name == "d")
        return make_grid_goal_distance(problem);
    if (name == "p")
        return make_package_distance(problem);
    if (name == "t")
        return make_target_distance(problem);
    if (name == "m")
        return make_boxes_min_marbles(problem);
    if (name == "n") {
        if (domain == "delivery")
            return make_undelivered_count(problem);
        if (domain == "boxes")
            return make_boxes_left(problem);
        if (domain == "blocks_clear" || domain == "blocks_on")
            return make_blocks_above(problem);
        // Probe the vocabulary for file-loaded problems.
        auto by_pred = atoms_by_predicate(problem);
        if (by_pred.count("atp"))
            return make_undelivered_count(problem);
        if (by_pred.count("in"))
            return make_boxes_left(problem);
        if (by_pred.count("on"))
            return make_blocks_above(problem);
        throw UnknownHook("hook n: cannot infer a counter for this problem");
    }
    throw UnknownHook("unknown builtin hook '" + name + "'");
}

}

vector<FeatureSpec> parse_feature_specs(const string &text) {
    vector<FeatureSpec> specs;
    size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && (text[i] == ',' || isspace(uint8_t(text[i]))))
            ++i;
        if (i >= text.size())
            break;
        // Read a name up to ',' at depth 0.
        int depth = 0;
        size_t start = i;
        while (i < text.size() && (depth > 0 || text[i] != ',')) {
            if (text[i] == '(')
                ++depth;
            else if (text[i] == ')')
                --depth;
            ++i;
        }
        string item = text.substr(start, i - start);
        while (!item.empty() && isspace(uint8_t(item.back())))
            item.pop_back();
        if (item == "#g") {
            specs.push_back(FeatureSpec::goal_counter());
        } else if (item.rfind("count(", 0) == 0 && item.back() == ')') {
            string inner = item.substr(6, item.size() - 7);
            size_t comma = inner.find(',');
            if (comma == string::npos)
                throw PlanningError("count needs a predicate and a pattern: " + item);
            string predicate = inner.substr(0, comma);
            string pattern_text = inner.substr(comma + 1);
            if (pattern_text.size() < 2 || pattern_text.front() != '(' ||
                pattern_text.back() != ')')
                throw PlanningError("count pattern must be parenthesized: " + item);
            vector<string> pattern;
            string current;
            for (char c : pattern_text.substr(1, pattern_text.size() - 2)) {
                if (c == ',') {
                    pattern.push_back(current);
                    current.clear();
                } else if (!isspace(uint8_t(c))) {
                    current += c;
                }
            }
            pattern.push_back(current);
            specs.push_back(FeatureSpec::count(item, predicate, pattern));
        } else {
            specs.push_back(FeatureSpec::builtin(item));
        }
    }
    return specs;
}

vector<Feature> resolve_features(const GroundProblem &problem,
                                 const vector<FeatureSpec> &specs) {
    vector<Feature> features;
    for (const FeatureSpec &spec : specs) {
        switch (spec.def) {
        case FeatureSpec::Def::builtin: {
            Feature feature = make_builtin(problem, spec.name);
            feature.name = spec.name;
            features.push_back(feature);
            break;
        }
        case FeatureSpec::Def::goal_count:
            features.push_back(make_goal_count(problem, spec.name));
            break;
        case FeatureSpec::Def::count:
            features.push_back(make_count(problem, spec));
            break;
        }
    }
    return features;
}

vector<Feature> bind_features(const GroundProblem &problem, const RuleSet &rs) {
    vector<FeatureSpec> specs;
    for (const FeatureDecl &decl : rs.features) {
        if (decl.name == "#g")
            specs.push_back(FeatureSpec::goal_counter(decl.name));
        else
            specs.push_back(FeatureSpec::builtin(decl.name));
    }
    vector<Feature> features = resolve_features(problem, specs);
    for (size_t i = 0; i < features.size(); ++i) {
        if (features[i].kind != rs.features[i].kind)
            throw KindError("feature " + rs.features[i].name +
                            ": declared kind does not match the hook");
    }
    return features;
}

}
