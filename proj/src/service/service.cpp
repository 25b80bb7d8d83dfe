#include "trm/service/service.hpp"

#include <semaphore>

#include <spdlog/spdlog.h>

#include "trm/models/json.hpp"

namespace trm::service {

using nlohmann::json;

struct PredictionService::Slots {
    explicit Slots(std::ptrdiff_t n) : sem(n) {}
    std::counting_semaphore<1024> sem;
};

PredictionService::PredictionService(ModelArtifact artifact, ServiceOptions options)
    : artifact_(std::move(artifact)),
      options_(options),
      groups_(raw_field_groups(artifact_.preprocessor)),
      slots_(std::make_unique<Slots>(static_cast<std::ptrdiff_t>(std::clamp<std::size_t>(options.max_concurrent_explain, 1, 1024)))) {}

PredictionService::~PredictionService() = default;

namespace {

Response error(int status, const std::string& code, const std::string& message, const std::string& field = {}) {
    return {status, {{"code", code}, {"message", message}, {"field", field.empty() ? json(nullptr) : json(field)}}};
}

std::string join(const std::string& where, const std::string& field) {
    return where.empty() ? field : where + "." + field;
}

// Numeric training range of each raw numeric field, by schema order.
struct Range {
    double min = 0.0, max = 0.0;
    bool known = false;
};

std::vector<Range> numeric_ranges(const data::PreprocessorState& s) {
    std::vector<Range> out(s.schema.numeric_columns.size());
    for (std::size_t k = 0; k < s.scaler.positions.size(); ++k) {
        const auto& name = s.encoded_columns[s.scaler.positions[k]].name;
        if (auto i = s.schema.numeric_index(name)) out[*i] = {s.scaler.min[k], s.scaler.max[k], true};
    }
    return out;
}

json extrapolation(const data::PreprocessorState& s, const data::WallRecord& r) {
    json out = json::array();
    const auto ranges = numeric_ranges(s);
    for (std::size_t k = 0; k < ranges.size(); ++k) {
        if (!ranges[k].known) continue;
        const double v = r.numeric[k];
        if (v < ranges[k].min || v > ranges[k].max)
            out.push_back({{"field", s.schema.numeric_columns[k].name},
                           {"value", v},
                           {"min", ranges[k].min},
                           {"max", ranges[k].max},
                           {"message", "outside the training range; prediction is an extrapolation"}});
    }
    return out;
}

// Runs validation plus the transform, mapping data errors to HTTP statuses.
Matrix transform(const ModelArtifact& a, const std::vector<data::WallRecord>& records, const std::string& where,
                 bool batch) {
    try {
        return data::apply_preprocessor(a.preprocessor, records);
    } catch (const CategoryError& e) {
        const auto prefix = batch && e.row() ? "[" + std::to_string(*e.row()) + "]" : where;
        throw RequestError(422, "unknown_category", e.detail(), join(prefix, e.column()));
    } catch (const DataError& e) {
        const auto prefix = batch && e.row() ? "[" + std::to_string(*e.row()) + "]" : where;
        throw RequestError(400, "invalid_value", e.detail(), join(prefix, e.column()));
    }
}

}  // namespace

data::WallRecord record_from_json(const json& j, const data::DatasetSchema& schema, const std::string& where) {
    if (!j.is_object()) throw RequestError(400, "invalid_type", "record must be a JSON object", where);
    data::WallRecord r;
    for (const auto& c : schema.categorical_columns) {
        const auto f = join(where, c.name);
        if (!j.contains(c.name)) throw RequestError(400, "missing_field", "missing field '" + c.name + "'", f);
        if (!j[c.name].is_string()) throw RequestError(400, "invalid_type", "'" + c.name + "' must be a string", f);
        r.categorical.push_back(j[c.name].get<std::string>());
    }
    for (const auto& n : schema.numeric_columns) {
        const auto f = join(where, n.name);
        if (!j.contains(n.name)) throw RequestError(400, "missing_field", "missing field '" + n.name + "'", f);
        if (!j[n.name].is_number())
            throw RequestError(400, "invalid_type", "'" + n.name + "' must be a number (" + n.unit + ")", f);
        r.numeric.push_back(j[n.name].get<double>());
    }
    for (const auto& [key, value] : j.items()) {
        if (key == "mode") continue;
        if (key == schema.target_column)
            throw RequestError(400, "unknown_field", "'" + key + "' is the target and must not be sent", join(where, key));
        if (!schema.categorical_index(key) && !schema.numeric_index(key))
            throw RequestError(400, "unknown_field", "unknown field '" + key + "'", join(where, key));
    }
    return r;
}

Response PredictionService::handle(const std::string& method, const std::string& path, const std::string& body) const {
    try {
        const bool get = method == "GET", post = method == "POST";
        auto parse = [&] {
            try {
                return json::parse(body);
            } catch (const json::parse_error& e) {
                throw RequestError(400, "invalid_json", std::string("request body is not valid JSON: ") + e.what(), "");
            }
        };
        if (path == "/health") return get ? Response{200, {{"status", "ok"}}} : error(405, "method_not_allowed", "use GET");
        if (path == "/schema") return get ? schema() : error(405, "method_not_allowed", "use GET");
        if (path == "/model/meta") return get ? meta() : error(405, "method_not_allowed", "use GET");
        if (path == "/predict") return post ? predict(parse()) : error(405, "method_not_allowed", "use POST");
        if (path == "/explain") return post ? explain(parse()) : error(405, "method_not_allowed", "use POST");
        return error(404, "not_found", "no endpoint " + path);
    } catch (const RequestError& e) {
        return error(e.status(), e.code(), e.what(), e.field());
    } catch (const std::exception& e) {
        spdlog::error("{} {} failed: {}", method, path, e.what());
        return error(500, "internal", "internal error");
    }
}

Response PredictionService::schema() const {
    const auto& s = artifact_.preprocessor.schema;
    const auto ranges = numeric_ranges(artifact_.preprocessor);
    json fields = json::array();
    for (const auto& c : s.categorical_columns)
        fields.push_back({{"name", c.name}, {"type", "categorical"}, {"categories", c.categories}, {"description", c.description}});
    for (std::size_t k = 0; k < s.numeric_columns.size(); ++k) {
        const auto& n = s.numeric_columns[k];
        json f = {{"name", n.name},
                  {"type", "numeric"},
                  {"unit", n.unit},
                  {"integer", n.quantity == data::Quantity::count},
                  {"description", n.description}};
        if (ranges[k].known) {
            f["min"] = ranges[k].min;
            f["max"] = ranges[k].max;
        }
        fields.push_back(std::move(f));
    }
    return {200, {{"fields", std::move(fields)}, {"target", {{"name", s.target_column}, {"unit", s.target_unit}}}}};
}

Response PredictionService::meta() const {
    const auto& m = artifact_.model;
    return {200,
            {{"format_version", artifact_.format_version},
             {"created_at", artifact_.created_at},
             {"learner", models::to_string(m.learner)},
             {"params", models::params_to_json(m.params)},
             {"seed", m.seed},
             {"n_features", m.n_features},
             {"background_rows", artifact_.background.rows()},
             {"training_report", artifact_.training_report}}};
}

Response PredictionService::predict(const json& body) const {
    const auto& schema = artifact_.preprocessor.schema;
    if (body.is_array()) {
        if (body.empty()) throw RequestError(400, "invalid_value", "empty batch", "");
        std::vector<data::WallRecord> records;
        for (std::size_t i = 0; i < body.size(); ++i)
            records.push_back(record_from_json(body[i], schema, "[" + std::to_string(i) + "]"));
        const auto y = models::predict(artifact_.model, transform(artifact_, records, "", true));
        json out = json::array();
        for (std::size_t i = 0; i < records.size(); ++i)
            out.push_back({{"prediction_kN", y(static_cast<Eigen::Index>(i))},
                           {"extrapolation", extrapolation(artifact_.preprocessor, records[i])}});
        return {200, {{"predictions", std::move(out)}}};
    }
    const auto record = record_from_json(body, schema);
    if (body.contains("mode")) throw RequestError(400, "unknown_field", "'mode' applies to /explain only", "mode");
    const auto y = models::predict(artifact_.model, transform(artifact_, {record}, "", false));
    return {200, {{"prediction_kN", y(0)}, {"extrapolation", extrapolation(artifact_.preprocessor, record)}}};
}

Response PredictionService::explain(const json& body) const {
    std::string mode = "shapley";
    if (body.is_object() && body.contains("mode")) {
        if (!body["mode"].is_string()) throw RequestError(400, "invalid_type", "'mode' must be a string", "mode");
        mode = body["mode"].get<std::string>();
        if (mode != "shapley" && mode != "lime")
            throw RequestError(400, "invalid_value", "'mode' must be 'shapley' or 'lime'", "mode");
    }
    const auto record = record_from_json(body, artifact_.preprocessor.schema);
    const Matrix x = transform(artifact_, {record}, "", false);
    const auto xs = row_span(x, 0);

    if (!slots_->sem.try_acquire_for(options_.explain_wait))
        return error(503, "busy", "all explanation slots are busy; retry later");
    struct Release {
        Slots& s;
        ~Release() { s.sem.release(); }
    } release{*slots_};

    const auto f = interpret::predictor_of(artifact_.model);
    interpret::Attribution a;
    if (mode == "shapley") {
        a = groups_.size() <= interpret::kMaxExactPlayers
                ? interpret::shapley_exact(f, xs, artifact_.background, groups_)
                : interpret::shapley_sampled(f, xs, artifact_.background, groups_,
                                             options_.sampled_shapley_permutations, options_.sampled_shapley_seed);
    } else {
        interpret::LimeOptions o;
        o.n_perturbations = std::max(options_.lime_perturbations, 10 * xs.size());
        o.seed = options_.lime_seed;
        const Vector ref = artifact_.background.colwise().mean();
        a = interpret::lime_explain(f, xs, std::span<const double>(ref.data(), static_cast<std::size_t>(ref.size())),
                                    groups_, o);
    }
    json contributions = json::array();
    for (std::size_t i = 0; i < a.phi.size(); ++i)
        contributions.push_back({{"feature", a.names[i]}, {"value", a.phi[i]}});
    return {200,
            {{"prediction_kN", a.prediction},
             {"base_value", a.base_value},
             {"method", interpret::to_string(a.method)},
             {"contributions", std::move(contributions)},
             {"extrapolation", extrapolation(artifact_.preprocessor, record)}}};
}

}  // namespace trm::service
