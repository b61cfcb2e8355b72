#include "problem.h"

#include <algorithm>

using namespace std;

namespace wbp {

AtomId AtomUniverse::add(const string &name) {
    auto it = index.find(name);
    if (it != index.end())
        return it->second;
    AtomId id = AtomId(names.size());
    names.push_back(name);
    index[name] = id;
    return id;
}

AtomId AtomUniverse::id_of(const string &name) const {
    auto it = index.find(name);
    if (it == index.end())
        throw PlanningError("unknown atom: " + name);
    return it->second;
}

static Bitset make_mask(int num_bits, const vector<AtomId> &ids) {
    Bitset mask(num_bits);
    for (AtomId id : ids)
        mask.set(id);
    return mask;
}

void GroundProblem::finalize() {
    int n = universe.size();
    sort(goal.begin(), goal.end());
    goal.erase(unique(goal.begin(), goal.end()), goal.end());
    goal_mask = make_mask(n, goal);

    Bitset touched(n);
    for (GroundAction &action : actions) {
        sort(action.pre.begin(), action.pre.end());
        sort(action.add.begin(), action.add.end());
        sort(action.del.begin(), action.del.end());
        action.pre_mask = make_mask(n, action.pre);
        action.add_mask = make_mask(n, action.add);
        action.del_mask = make_mask(n, action.del);
        if (action.add_mask.intersects(action.del_mask))
            throw PlanningError("action " + action.name + " adds and deletes the same atom");
        touched |= action.add_mask;
        touched |= action.del_mask;
    }
    static_atoms = Bitset(n);
    for (int i = 0; i < n; ++i)
        if (!touched.test(i))
            static_atoms.set(i);
}

State GroundProblem::apply(const GroundAction &action, const State &s) const {
    State succ = s;
    succ.subtract(action.del_mask);
    succ |= action.add_mask;
    return succ;
}

vector<pair<int, State>> GroundProblem::successors(const State &s) const {
    vector<pair<int, State>> result;
    for (size_t i = 0; i < actions.size(); ++i)
        if (actions[i].applicable(s))
            result.emplace_back(int(i), apply(actions[i], s));
    return result;
}

State replay_plan(const GroundProblem &problem, const State &from,
                  const vector<int> &plan) {
    State s = from;
    for (int action_id : plan) {
        const GroundAction &action = problem.actions.at(action_id);
        if (!action.applicable(s))
            throw PlanningError("plan replay: action " + action.name + " not applicable");
        s = problem.apply(action, s);
    }
    return s;
}

}
