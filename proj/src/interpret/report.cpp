#include "trm/interpret/report.hpp"

namespace trm::interpret {

nlohmann::json to_json(const Attribution& a) {
    nlohmann::json contributions = nlohmann::json::array();
    for (std::size_t i = 0; i < a.phi.size(); ++i) {
        nlohmann::json c = {{"feature", a.names[i]}, {"value", a.phi[i]}};
        if (i < a.std_error.size()) c["std_error"] = a.std_error[i];
        contributions.push_back(std::move(c));
    }
    nlohmann::json j = {{"method", to_string(a.method)},
                        {"base_value", a.base_value},
                        {"prediction", a.prediction},
                        {"contributions", std::move(contributions)}};
    if (a.method != AttributionMethod::shapley_exact) {
        j["n_samples"] = a.n_samples;
        j["seed"] = a.seed;
    }
    return j;
}

nlohmann::json to_json(const Importance& imp) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < imp.values.size(); ++i) {
        nlohmann::json r = {{"feature", imp.names[i]}, {"importance", imp.values[i]}};
        if (i < imp.std_dev.size()) r["std"] = imp.std_dev[i];
        rows.push_back(std::move(r));
    }
    nlohmann::json j = {{"method", imp.method}, {"features", std::move(rows)}};
    if (imp.method == "permutation") {
        j["baseline_mse"] = imp.baseline;
        j["n_repeats"] = imp.n_repeats;
        j["seed"] = imp.seed;
    }
    return j;
}

nlohmann::json to_json(const Dependence& d) {
    return {{"feature", d.feature}, {"grid", d.grid}, {"pdp", d.pdp}, {"ice", d.ice}, {"rows", d.row_ids}};
}

}  // namespace trm::interpret
