#include "trm/service/artifact.hpp"

#include <fstream>
#include <map>

#include "trm/data/json.hpp"
#include "trm/models/json.hpp"

namespace trm::service {

using nlohmann::json;

ModelArtifact make_artifact(const data::PreprocessorState& state, const data::Scaler& scaler,
                            models::FittedModel model, const Matrix& scaled_rows, json training_report,
                            std::uint64_t background_seed) {
    if (scaled_rows.cols() != static_cast<Eigen::Index>(model.n_features))
        throw InvalidArgument("background width does not match the model");
    ModelArtifact a;
    a.schema = state.schema;
    a.preprocessor = state;
    a.preprocessor.scaler = scaler;
    a.model = std::move(model);
    a.training_report = std::move(training_report);
    a.created_at = models::utc_timestamp();
    const auto rows =
        interpret::background_rows(static_cast<std::size_t>(scaled_rows.rows()), kMaxBackgroundRows, background_seed);
    a.background.resize(static_cast<Eigen::Index>(rows.size()), scaled_rows.cols());
    for (std::size_t i = 0; i < rows.size(); ++i)
        a.background.row(static_cast<Eigen::Index>(i)) = scaled_rows.row(static_cast<Eigen::Index>(rows[i]));
    return a;
}

json to_json(const ModelArtifact& a) {
    json bg = json::array();
    for (Eigen::Index r = 0; r < a.background.rows(); ++r) {
        const auto s = row_span(a.background, r);
        bg.push_back(std::vector<double>(s.begin(), s.end()));
    }
    json model;
    models::to_json(model, a.model);
    json schema, prep;
    data::to_json(schema, a.schema);
    data::to_json(prep, a.preprocessor);
    return {{"format_version", a.format_version},
            {"created_at", a.created_at},
            {"schema", std::move(schema)},
            {"preprocessor", std::move(prep)},
            {"model", std::move(model)},
            {"training_report", a.training_report},
            {"background", std::move(bg)}};
}

namespace {

int major_version(const std::string& v) {
    const auto dot = v.find('.');
    const auto head = v.substr(0, dot);
    if (head.empty() || head.find_first_not_of("0123456789") != std::string::npos)
        throw ArtifactError("malformed format_version '" + v + "'");
    return std::stoi(head);
}

}  // namespace

ModelArtifact artifact_from_json(const json& j) {
    if (!j.is_object() || !j.contains("format_version") || !j["format_version"].is_string())
        throw ArtifactError("artifact has no format_version");
    const auto version = j["format_version"].get<std::string>();
    if (major_version(version) != major_version(kFormatVersion))
        throw ArtifactError("unsupported artifact format_version " + version + " (this reader handles " +
                            std::to_string(major_version(kFormatVersion)) + ".x)");
    ModelArtifact a;
    try {
        a.format_version = version;
        a.created_at = j.at("created_at").get<std::string>();
        data::from_json(j.at("schema"), a.schema);
        data::from_json(j.at("preprocessor"), a.preprocessor);
        models::from_json(j.at("model"), a.model);
        a.training_report = j.at("training_report");
        const auto& bg = j.at("background");
        a.background.resize(static_cast<Eigen::Index>(bg.size()), static_cast<Eigen::Index>(a.model.n_features));
        for (std::size_t r = 0; r < bg.size(); ++r) {
            const auto v = bg[r].get<std::vector<double>>();
            if (v.size() != a.model.n_features) throw ArtifactError("background row width does not match the model");
            for (std::size_t c = 0; c < v.size(); ++c)
                a.background(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = v[c];
        }
    } catch (const json::exception& e) {
        throw ArtifactError(std::string("malformed artifact: ") + e.what());
    }
    json lhs, rhs;
    data::to_json(lhs, a.schema);
    data::to_json(rhs, a.preprocessor.schema);
    if (lhs != rhs) throw ArtifactError("artifact schema and preprocessor schema disagree");
    if (a.preprocessor.encoded_columns.size() != a.model.n_features)
        throw ArtifactError("preprocessor output width does not match the model");
    if (a.background.rows() == 0) throw ArtifactError("artifact has no background rows");
    return a;
}

void save_artifact(const ModelArtifact& a, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write artifact to " + path.string());
    out << to_json(a).dump(1) << '\n';
    if (!out) throw Error("failed writing artifact to " + path.string());
}

ModelArtifact load_artifact(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ArtifactError("cannot open artifact " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ArtifactError("artifact " + path.string() + " is not valid JSON: " + e.what());
    }
    return artifact_from_json(j);
}

Vector predict_records(const ModelArtifact& a, const std::vector<data::WallRecord>& records) {
    return models::predict(a.model, data::apply_preprocessor(a.preprocessor, records));
}

interpret::FeatureGroups raw_field_groups(const data::PreprocessorState& state) {
    interpret::FeatureGroups g;
    std::map<std::string, std::size_t> slot;
    for (std::size_t c = 0; c < state.encoded_columns.size(); ++c) {
        const auto& col = state.encoded_columns[c];
        const auto& name = col.kind == data::ColumnKind::binary ? col.group : col.name;
        auto it = slot.find(name);
        if (it == slot.end()) {
            it = slot.emplace(name, g.columns.size()).first;
            g.columns.emplace_back();
            g.names.push_back(name);
        }
        g.columns[it->second].push_back(c);
    }
    return g;
}

}  // namespace trm::service
