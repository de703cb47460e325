#include "phaselab/report.hpp"

#include <cmath>

#include "phaselab/types.hpp"

namespace phaselab {

void Report::add(const std::string& name, double residual, double tol) {
    entries_[name] = {residual, tol, std::isfinite(residual) && residual < tol};
}

void Report::add_lower(const std::string& name, double value, double tol) {
    entries_[name] = {value, tol, std::isfinite(value) && value > tol};
}

void Report::add_flag(const std::string& name, bool ok) { entries_[name] = {ok ? 0.0 : 1.0, 0.5, ok}; }

void Report::merge(const Report& other, const std::string& prefix) {
    for (const auto& [k, v] : other.entries_) entries_[prefix + k] = v;
}

bool Report::all_pass() const {
    for (const auto& [k, v] : entries_)
        if (!v.pass) return false;
    return true;
}

const CheckEntry& Report::at(const std::string& name) const {
    auto it = entries_.find(name);
    if (it == entries_.end()) throw Error("report: no entry named " + name);
    return it->second;
}

nlohmann::ordered_json Report::to_json() const {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (const auto& [k, v] : entries_) {
        nlohmann::ordered_json e;
        if (std::isfinite(v.residual))
            e["residual"] = v.residual;
        else
            e["residual"] = nullptr;
        e["tol"] = v.tol;
        e["pass"] = v.pass;
        j[k] = e;
    }
    return j;
}

}  // namespace phaselab
