#pragma once

#include <map>
#include <string>

#include "json.hpp"

namespace phaselab {

struct CheckEntry {
    double residual = 0.0;
    double tol = 0.0;
    bool pass = false;
};

// Named residuals. add() passes when residual < tol; add_lower() when value > tol (positivity).
class Report {
public:
    void add(const std::string& name, double residual, double tol);
    void add_lower(const std::string& name, double value, double tol);
    void add_flag(const std::string& name, bool ok);
    void merge(const Report& other, const std::string& prefix = "");

    bool all_pass() const;
    const std::map<std::string, CheckEntry>& entries() const { return entries_; }
    const CheckEntry& at(const std::string& name) const;
    bool has(const std::string& name) const { return entries_.count(name) > 0; }
    nlohmann::ordered_json to_json() const;

private:
    std::map<std::string, CheckEntry> entries_;
};

}  // namespace phaselab
