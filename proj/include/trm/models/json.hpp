#pragma once

#include <nlohmann/json.hpp>

#include "trm/models/model.hpp"

namespace trm::models {

using nlohmann::json;

json param_to_json(const ParamValue& v);
ParamValue param_from_json(const json& j);
json params_to_json(const Params& p);
Params params_from_json(const json& j);

void to_json(json& j, const DecisionTree& t);
void from_json(const json& j, DecisionTree& t);
void to_json(json& j, const FittedModel& m);
void from_json(const json& j, FittedModel& m);

}  // namespace trm::models
