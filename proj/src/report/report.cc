#include "report.h"

#include <sstream>

using namespace std;
using nlohmann::ordered_json;

namespace wbp {

RunReport::RunReport(const string &command) {
    doc["schema_version"] = schema_version;
    doc["command"] = command;
    doc["instance"] = ordered_json::object();
    doc["results"] = ordered_json::object();
    doc["wall_ms"] = 0.0;
}

void RunReport::set_instance(const string &name, int num_atoms, int num_actions) {
    doc["instance"]["name"] = name;
    doc["instance"]["atoms"] = num_atoms;
    doc["instance"]["actions"] = num_actions;
}

void RunReport::set_wall_ms(double ms) {
    doc["wall_ms"] = ms;
}

string RunReport::structured() const {
    return doc.dump(2) + "\n";
}

namespace {

void render(ostream &out, const string &key, const ordered_json &value, int indent) {
    string pad(indent, ' ');
    if (value.is_object() && value.empty())
        return;
    if (value.is_object()) {
        out << pad << key << ":\n";
        for (const auto &[k, v] : value.items())
            render(out, k, v, indent + 2);
    } else if (value.is_array() && !value.empty() && value[0].is_object()) {
        out << pad << key << ":\n";
        for (size_t i = 0; i < value.size(); ++i)
            render(out, "[" + to_string(i) + "]", value[i], indent + 2);
    } else {
        out << pad << key << ": " << value.dump() << "\n";
    }
}

}

string RunReport::text() const {
    ostringstream out;
    for (const auto &[key, value] : doc.items()) {
        if (key == "schema_version")
            continue;
        render(out, key, value, 0);
    }
    return out.str();
}

}
