#include "trm/selection/report.hpp"

#include <cmath>

#include "trm/models/json.hpp"

namespace trm::selection {

void to_json(json& j, const MetricSet& m) {
    j = {{"r2", m.r2}, {"mse", m.mse}, {"rmse", m.rmse}, {"mae", m.mae}};
    j["mape"] = m.mape_defined ? json(m.mape) : json(nullptr);
}

void from_json(const json& j, MetricSet& m) {
    m.r2 = j.at("r2").get<double>();
    m.mse = j.at("mse").get<double>();
    m.rmse = j.at("rmse").get<double>();
    m.mae = j.at("mae").get<double>();
    m.mape_defined = !j.at("mape").is_null();
    m.mape = m.mape_defined ? j.at("mape").get<double>() : std::nan("");
}

void to_json(json& j, const HyperSpec& s) {
    j = {{"name", s.name}, {"kind", to_string(s.kind)}};
    if (s.kind == SpecKind::categorical) {
        j["choices"] = json::array();
        for (const auto& c : s.choices) j["choices"].push_back(models::param_to_json(c));
    } else if (s.kind == SpecKind::integer) {
        j["lo"] = static_cast<std::int64_t>(s.lo);
        j["hi"] = static_cast<std::int64_t>(s.hi);
    } else {
        j["lo"] = s.lo;
        j["hi"] = s.hi;
    }
}

void from_json(const json& j, HyperSpec& s) {
    s.name = j.at("name").get<std::string>();
    s.kind = spec_kind_from_string(j.at("kind").get<std::string>());
    s.choices.clear();
    if (s.kind == SpecKind::categorical) {
        for (const auto& c : j.at("choices")) s.choices.push_back(models::param_from_json(c));
    } else {
        s.lo = j.at("lo").get<double>();
        s.hi = j.at("hi").get<double>();
    }
}

void to_json(json& j, const HyperSpace& s) {
    j = {{"specs", s.specs}, {"fixed", models::params_to_json(s.fixed)}, {"n_candidates", s.n_candidates}, {"seed", s.seed}};
}

void from_json(const json& j, HyperSpace& s) {
    s.specs = j.at("specs").get<std::vector<HyperSpec>>();
    s.fixed = models::params_from_json(j.value("fixed", json::object()));
    s.n_candidates = j.value("n_candidates", std::size_t{100});
    s.seed = j.value("seed", std::uint64_t{0});
}

void to_json(json& j, const CvResult& r) {
    j = {{"rank", r.rank}, {"index", r.index}, {"params", models::params_to_json(r.params)}, {"failed", r.failed}};
    if (r.failed) {
        j["error"] = r.error;
    } else {
        j["mean"] = r.mean;
        j["std"] = r.std;
        j["folds"] = r.folds;
    }
}

void to_json(json& j, const CurvePoint& p) {
    j = {{"fraction", p.fraction},         {"n_train", p.n_train},       {"train_r2_mean", p.train_r2_mean},
         {"train_r2_std", p.train_r2_std}, {"cv_r2_mean", p.cv_r2_mean}, {"cv_r2_std", p.cv_r2_std}};
}

json search_report(const SearchResult& r) {
    const auto& best = r.best();
    std::size_t failed = 0;
    for (const auto& c : r.ranked) failed += c.failed ? 1 : 0;
    return {{"kind", "search_report"},
            {"learner", models::to_string(r.learner)},
            {"folds", r.options.k},
            {"seed", r.options.seed},
            {"n_rows", r.n_rows},
            {"space", r.space},
            {"n_candidates", r.ranked.size()},
            {"n_failed", failed},
            {"selection_metric", "mean validation r2 (ties: mean rmse)"},
            {"best", {{"params", models::params_to_json(best.params)},
                      {"index", best.index},
                      {"seed", candidate_seed(r.options.seed, best.index)},
                      {"mean", best.mean},
                      {"std", best.std}}},
            {"candidates", r.ranked}};
}

json leaderboard_report(const Leaderboard& b) {
    json rows = json::array();
    for (const auto& r : b.rows) rows.push_back({{"name", r.name}, {"train", r.train}, {"test", r.test}});
    json orders = json::object();
    for (const char* m : {"r2", "mse", "rmse", "mae", "mape"}) orders[m] = b.order_by(m);
    return {{"kind", "leaderboard"}, {"rows", rows}, {"order_by_test", orders}};
}

}  // namespace trm::selection
