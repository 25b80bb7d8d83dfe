#pragma once

#include <nlohmann/json.hpp>

#include "trm/data/cooks.hpp"
#include "trm/data/pipeline.hpp"
#include "trm/data/preprocess.hpp"

namespace trm::data {

using nlohmann::json;

void to_json(json& j, const DatasetSchema& s);
void from_json(const json& j, DatasetSchema& s);
void to_json(json& j, const Column& c);
void from_json(const json& j, Column& c);
void to_json(json& j, const Scaler& s);
void from_json(const json& j, Scaler& s);
void to_json(json& j, const PreprocessorState& s);
void from_json(const json& j, PreprocessorState& s);
void to_json(json& j, const CooksReport& r);
void from_json(const json& j, CooksReport& r);
void to_json(json& j, const TabularDataset& ds);
void from_json(const json& j, TabularDataset& ds);
void to_json(json& j, const PreparedData& p);
void from_json(const json& j, PreparedData& p);

/// Human-facing preprocessing report: category maps, mu/sigma per column, Cook's distances, flagged ids.
json preprocessing_report(const PreparedData& p);

}  // namespace trm::data
