#ifndef DOMAINS_PROBLEM_FILE_H
#define DOMAINS_PROBLEM_FILE_H

#include "../core/problem.h"

#include <string>

namespace wbp {

class SemanticError : public PlanningError {
public:
    explicit SemanticError(const std::string &msg) : PlanningError(msg) {}
};

/*
  Line-oriented grounded problem format, '#' starts a comment:

      problem <name>
      atoms: a1 a2 ...
      init: a1 ...
      goal: a2 ...
      action <name> pre: ... add: ... del: ...

  Atom spelling is canonical pred(obj1,obj2) with no spaces. Atom ids follow
  the order of the atoms: line, so emit(parse(t)) is canonical and
  parse(emit(p)) reproduces p.
*/
GroundProblem parse_problem(const std::string &text);
std::string emit_problem(const GroundProblem &problem);

}

#endif
