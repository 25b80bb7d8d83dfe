#include "trm/models/params.hpp"

#include <sstream>

#include "trm/common/error.hpp"

namespace trm::models {

double get_double(const Params& p, const std::string& key, double fallback) {
    const auto it = p.find(key);
    if (it == p.end()) return fallback;
    if (const auto* d = std::get_if<double>(&it->second)) return *d;
    if (const auto* i = std::get_if<std::int64_t>(&it->second)) return static_cast<double>(*i);
    throw InvalidArgument("hyperparameter '" + key + "' must be numeric");
}

std::int64_t get_int(const Params& p, const std::string& key, std::int64_t fallback) {
    const auto it = p.find(key);
    if (it == p.end()) return fallback;
    if (const auto* i = std::get_if<std::int64_t>(&it->second)) return *i;
    if (const auto* d = std::get_if<double>(&it->second)) {
        if (static_cast<double>(static_cast<std::int64_t>(*d)) == *d) return static_cast<std::int64_t>(*d);
    }
    throw InvalidArgument("hyperparameter '" + key + "' must be an integer");
}

std::string get_string(const Params& p, const std::string& key, const std::string& fallback) {
    const auto it = p.find(key);
    if (it == p.end()) return fallback;
    if (const auto* s = std::get_if<std::string>(&it->second)) return *s;
    throw InvalidArgument("hyperparameter '" + key + "' must be a label");
}

bool get_bool(const Params& p, const std::string& key, bool fallback) {
    const auto it = p.find(key);
    if (it == p.end()) return fallback;
    if (const auto* s = std::get_if<std::string>(&it->second)) {
        if (*s == "true") return true;
        if (*s == "false") return false;
    }
    if (const auto* i = std::get_if<std::int64_t>(&it->second)) return *i != 0;
    throw InvalidArgument("hyperparameter '" + key + "' must be true/false");
}

std::string to_string(const ParamValue& v) {
    std::ostringstream os;
    os.precision(17);
    std::visit([&](const auto& x) { os << x; }, v);
    return os.str();
}

std::string to_string(const Params& p) {
    std::string out;
    for (const auto& [k, v] : p) out += (out.empty() ? "" : ", ") + k + "=" + to_string(v);
    return out;
}

}  // namespace trm::models
