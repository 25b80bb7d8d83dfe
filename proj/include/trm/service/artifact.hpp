#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "trm/common/error.hpp"
#include "trm/data/pipeline.hpp"
#include "trm/interpret/explain.hpp"
#include "trm/models/model.hpp"

namespace trm::service {

inline constexpr const char* kFormatVersion = "1.0.0";

/// Artifact that cannot be read: bad JSON, missing parts, or an incompatible format version.
class ArtifactError : public Error {
public:
    using Error::Error;
};

/// Everything needed to serve a model: raw records in, kN out.
struct ModelArtifact {
    std::string format_version = kFormatVersion;
    data::DatasetSchema schema;
    data::PreprocessorState preprocessor;  ///< scaler is the one the model was trained with
    models::FittedModel model;
    nlohmann::json training_report = nlohmann::json::object();
    std::string created_at;
    Matrix background;  ///< scaled encoded rows used as the explanation baseline (<= 100)
};

constexpr std::size_t kMaxBackgroundRows = 100;

/// Assembles an artifact. `scaler` replaces the state's scaler, and `scaled_rows` is subsampled
/// (seeded, order kept) to at most kMaxBackgroundRows rows of background.
ModelArtifact make_artifact(const data::PreprocessorState& state, const data::Scaler& scaler,
                            models::FittedModel model, const Matrix& scaled_rows, nlohmann::json training_report,
                            std::uint64_t background_seed);

nlohmann::json to_json(const ModelArtifact& a);

/// Rejects any format_version whose major part differs from kFormatVersion.
ModelArtifact artifact_from_json(const nlohmann::json& j);

void save_artifact(const ModelArtifact& a, const std::filesystem::path& path);
ModelArtifact load_artifact(const std::filesystem::path& path);

/// Predictions in kN for raw records (validated, encoded and scaled with the artifact's state).
Vector predict_records(const ModelArtifact& a, const std::vector<data::WallRecord>& records);

/// One player per raw input field (a categorical field owns all its one-hot columns) plus one
/// per derived column, named after the field.
interpret::FeatureGroups raw_field_groups(const data::PreprocessorState& state);

}  // namespace trm::service
