#ifndef RULES_BUNDLED_H
#define RULES_BUNDLED_H

#include "rules.h"

#include <string>
#include <vector>

namespace wbp {

/*
  Rule sets shipped with the toolkit: the block-clearing and box-emptying
  policies, the delivery policy and its sketch family sigma0..sigma8, the
  grid distance policy, and the goal-counter / misplaced-blocks sketches.
*/
std::vector<std::string> bundled_rule_names();
bool has_bundled_rules(const std::string &name);
const std::string &bundled_rules_text(const std::string &name);
RuleSet bundled_rules(const std::string &name);

}

#endif
