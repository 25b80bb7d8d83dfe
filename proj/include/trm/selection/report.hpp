#pragma once

#include <nlohmann/json.hpp>

#include "trm/selection/curves.hpp"
#include "trm/selection/leaderboard.hpp"
#include "trm/selection/search.hpp"

namespace trm::selection {

using nlohmann::json;

void to_json(json& j, const MetricSet& m);
void from_json(const json& j, MetricSet& m);
void to_json(json& j, const HyperSpec& s);
void from_json(const json& j, HyperSpec& s);
void to_json(json& j, const HyperSpace& s);
void from_json(const json& j, HyperSpace& s);
void to_json(json& j, const CvResult& r);
void to_json(json& j, const CurvePoint& p);

/// Deterministic search report (no timestamps, no fitted model): identical inputs give identical bytes.
json search_report(const SearchResult& r);
json leaderboard_report(const Leaderboard& b);

}  // namespace trm::selection
