#ifndef CORE_PROBLEM_H
#define CORE_PROBLEM_H

#include "bitset.h"

#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace wbp {

using AtomId = int;
using State = Bitset;

class PlanningError : public std::runtime_error {
public:
    explicit PlanningError(const std::string &msg) : std::runtime_error(msg) {}
};

class InvalidParams : public PlanningError {
public:
    explicit InvalidParams(const std::string &msg) : PlanningError(msg) {}
};

class CapExceeded : public PlanningError {
public:
    explicit CapExceeded(const std::string &msg) : PlanningError(msg) {}
};

/*
  Ground atom names in canonical spelling pred(obj1,obj2) with dense ids
  0..N-1. Insertion order fixes the ids, so identical construction sequences
  yield identical universes.
*/
class AtomUniverse {
    std::vector<std::string> names;
    std::unordered_map<std::string, AtomId> index;

public:
    AtomId add(const std::string &name);
    AtomId id_of(const std::string &name) const;  // throws PlanningError if unknown
    bool has(const std::string &name) const {
        return index.count(name);
    }
    const std::string &name_of(AtomId id) const {
        return names[id];
    }
    int size() const {
        return int(names.size());
    }
    const std::vector<std::string> &atom_names() const {
        return names;
    }
    bool operator==(const AtomUniverse &other) const {
        return names == other.names;
    }
};

struct GroundAction {
    std::string name;
    std::vector<AtomId> pre, add, del;

    // Masks are filled in by GroundProblem::finalize().
    Bitset pre_mask, add_mask, del_mask;

    bool applicable(const State &s) const {
        return s.contains(pre_mask);
    }
    bool operator==(const GroundAction &other) const {
        return name == other.name && pre == other.pre && add == other.add &&
            del == other.del;
    }
};

struct GroundProblem {
    std::string name;
    // Metadata for feature hooks; not part of structural equality.
    std::string domain;
    std::map<std::string, int> params;

    AtomUniverse universe;
    State init;
    std::vector<AtomId> goal;
    std::vector<GroundAction> actions;

    Bitset goal_mask;
    Bitset static_atoms;  // atoms untouched by any add/del

    // Builds masks, sorts id vectors, computes static atoms and validates
    // the add/del disjointness invariant.
    void finalize();

    int num_atoms() const {
        return universe.size();
    }

    bool is_goal(const State &s) const {
        return s.contains(goal_mask);
    }

    State apply(const GroundAction &action, const State &s) const;

    // Applicable actions paired with successor states, in action id order.
    std::vector<std::pair<int, State>> successors(const State &s) const;

    bool operator==(const GroundProblem &other) const {
        return universe == other.universe && init == other.init &&
            goal == other.goal && actions == other.actions;
    }
};

// Replays a plan of action ids from a state; throws PlanningError on an
// inapplicable action.
State replay_plan(const GroundProblem &problem, const State &from,
                  const std::vector<int> &plan);

}

#endif
