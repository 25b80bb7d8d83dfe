#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>

namespace trm::models {

/// A hyperparameter value: integer, real or categorical label.
using ParamValue = std::variant<std::int64_t, double, std::string>;
using Params = std::map<std::string, ParamValue>;

/// Typed lookup with a default; integers are accepted where reals are expected.
double get_double(const Params& p, const std::string& key, double fallback);
std::int64_t get_int(const Params& p, const std::string& key, std::int64_t fallback);
std::string get_string(const Params& p, const std::string& key, const std::string& fallback);
bool get_bool(const Params& p, const std::string& key, bool fallback);

std::string to_string(const ParamValue& v);
std::string to_string(const Params& p);

}  // namespace trm::models
