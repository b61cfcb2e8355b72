#ifndef CORE_FEATURE_H
#define CORE_FEATURE_H

#include "problem.h"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace wbp {

class EvaluatorUnbound : public PlanningError {
public:
    explicit EvaluatorUnbound(const std::string &msg) : PlanningError(msg) {}
};

enum class FeatureKind {
    boolean,
    numerical,
};

/*
  Boolean or numerical state function. Numerical values are non-negative and
  bounded by the number of atoms; booleans evaluate to 0/1.
*/
struct Feature {
    std::string name;
    FeatureKind kind;
    std::function<int(const State &)> evaluate;
};

// Values aligned with a feature list; booleans stored as 0/1.
using FeatureValuation = std::vector<int>;

FeatureValuation eval_features(const std::vector<Feature> &features, const State &s);

/*
  Boolean projection b(f): bit i is the truth of "p" for a boolean feature
  and of "n = 0" for a numerical one. At most 31 features.
*/
using BoolValuation = uint32_t;

BoolValuation boolean_projection(const std::vector<Feature> &features,
                                 const FeatureValuation &values);

std::string format_bool_valuation(const std::vector<Feature> &features,
                                  BoolValuation b);

}

#endif
