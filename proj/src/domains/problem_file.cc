#include "problem_file.h"

#include "../rules/rules.h"

#include <sstream>

using namespace std;

namespace wbp {

namespace {

vector<string> split_words(const string &line) {
    vector<string> words;
    istringstream in(line);
    string word;
    while (in >> word)
        words.push_back(word);
    return words;
}

AtomId lookup(const GroundProblem &problem, const string &name, int line,
              const string &where) {
    if (!problem.universe.has(name))
        throw SemanticError("line " + to_string(line) + ": atom '" + name +
                            "' in " + where + " is not declared in the atoms section");
    return problem.universe.id_of(name);
}

}

GroundProblem parse_problem(const string &text) {
    GroundProblem problem;
    problem.domain = "custom";
    vector<AtomId> init_atoms;
    bool saw_atoms = false;

    istringstream in(text);
    string raw;
    int line_no = 0;
    while (getline(in, raw)) {
        ++line_no;
        size_t hash = raw.find('#');
        if (hash != string::npos)
            raw = raw.substr(0, hash);
        vector<string> words = split_words(raw);
        if (words.empty())
            continue;
        const string &head = words[0];
        if (head == "problem") {
            if (words.size() != 2)
                throw ParseError(line_no, "expected: problem <name>");
            problem.name = words[1];
        } else if (head == "atoms:") {
            saw_atoms = true;
            for (size_t i = 1; i < words.size(); ++i)
                problem.universe.add(words[i]);
        } else if (head == "init:") {
            for (size_t i = 1; i < words.size(); ++i)
                init_atoms.push_back(lookup(problem, words[i], line_no, "init"));
        } else if (head == "goal:") {
            for (size_t i = 1; i < words.size(); ++i)
                problem.goal.push_back(lookup(problem, words[i], line_no, "goal"));
        } else if (head == "action") {
            if (words.size() < 2)
                throw ParseError(line_no, "expected: action <name> pre: ... add: ... del: ...");
            GroundAction action;
            action.name = words[1];
            vector<AtomId> *section = nullptr;
            for (size_t i = 2; i < words.size(); ++i) {
                if (words[i] == "pre:")
                    section = &action.pre;
                else if (words[i] == "add:")
                    section = &action.add;
                else if (words[i] == "del:")
                    section = &action.del;
                else if (section)
                    section->push_back(lookup(problem, words[i], line_no,
                                              "action " + action.name));
                else
                    throw ParseError(line_no, "expected pre:/add:/del: before atoms");
            }
            problem.actions.push_back(action);
        } else {
            throw ParseError(line_no, "unexpected directive '" + head + "'");
        }
    }
    if (!saw_atoms)
        throw SemanticError("missing atoms: section");
    if (problem.name.empty())
        problem.name = "unnamed";

    problem.init = Bitset(problem.universe.size());
    for (AtomId id : init_atoms)
        problem.init.set(id);
    problem.finalize();
    return problem;
}

string emit_problem(const GroundProblem &problem) {
    ostringstream out;
    out << "problem " << problem.name << "\n";
    out << "atoms:";
    for (const string &name : problem.universe.atom_names())
        out << " " << name;
    out << "\n";
    out << "init:";
    problem.init.for_each_set([&](int id) {
        out << " " << problem.universe.name_of(id);
    });
    out << "\n";
    out << "goal:";
    for (AtomId id : problem.goal)
        out << " " << problem.universe.name_of(id);
    out << "\n";
    for (const GroundAction &action : problem.actions) {
        out << "action " << action.name;
        out << " pre:";
        for (AtomId id : action.pre)
            out << " " << problem.universe.name_of(id);
        out << " add:";
        for (AtomId id : action.add)
            out << " " << problem.universe.name_of(id);
        out << " del:";
        for (AtomId id : action.del)
            out << " " << problem.universe.name_of(id);
        out << "\n";
    }
    return out.str();
}

}
