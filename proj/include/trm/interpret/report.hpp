#pragma once

#include <nlohmann/json.hpp>

#include "trm/interpret/dependence.hpp"
#include "trm/interpret/importance.hpp"

namespace trm::interpret {

nlohmann::json to_json(const Attribution& a);
nlohmann::json to_json(const Importance& imp);
nlohmann::json to_json(const Dependence& d);

}  // namespace trm::interpret
