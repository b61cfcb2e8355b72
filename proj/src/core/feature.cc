#include "feature.h"

#include <cassert>

using namespace std;

namespace wbp {

FeatureValuation eval_features(const vector<Feature> &features, const State &s) {
    FeatureValuation values;
    values.reserve(features.size());
    for (const Feature &feature : features) {
        int v = feature.evaluate(s);
        assert(v >= 0);
        assert(feature.kind != FeatureKind::boolean || v <= 1);
        values.push_back(v);
    }
    return values;
}

BoolValuation boolean_projection(const vector<Feature> &features,
                                 const FeatureValuation &values) {
    assert(features.size() == values.size());
    assert(features.size() <= 31);
    BoolValuation b = 0;
    for (size_t i = 0; i < features.size(); ++i) {
        bool bit = features[i].kind == FeatureKind::boolean
            ? values[i] != 0
            : values[i] == 0;
        if (bit)
            b |= BoolValuation(1) << i;
    }
    return b;
}

string format_bool_valuation(const vector<Feature> &features, BoolValuation b) {
    string result;
    for (size_t i = 0; i < features.size(); ++i) {
        if (i > 0)
            result += ",";
        bool bit = (b >> i) & 1;
        if (features[i].kind == FeatureKind::boolean)
            result += (bit ? "" : "-") + features[i].name;
        else
            result += features[i].name + (bit ? "=0" : ">0");
    }
    return result;
}

}
