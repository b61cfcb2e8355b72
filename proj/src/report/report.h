#ifndef REPORT_REPORT_H
#define REPORT_REPORT_H

#include <json.hpp>

#include <string>

namespace wbp {

/*
  Machine-readable run report: one document per run with stable field
  names. Field order is fixed by construction order (ordered_json).
*/
class RunReport {
public:
    static constexpr int schema_version = 1;

    explicit RunReport(const std::string &command);

    void set_instance(const std::string &name, int num_atoms, int num_actions);
    nlohmann::ordered_json &results() {
        return doc["results"];
    }
    void set_wall_ms(double ms);

    std::string text() const;        // human-readable rendering
    std::string structured() const;  // JSON

private:
    nlohmann::ordered_json doc;
};

}

#endif
