#pragma once

#include <chrono>
#include <memory>
#include <string>

#include <nlohmann/json.hpp>

#include "trm/service/artifact.hpp"

namespace trm::service {

struct Response {
    int status = 200;
    nlohmann::json body;
};

struct ServiceOptions {
    std::size_t max_concurrent_explain = 2;
    std::chrono::milliseconds explain_wait{2000};  ///< queueing limit before answering 503
    std::size_t lime_perturbations = 1000;
    std::uint64_t lime_seed = 0;
    std::size_t sampled_shapley_permutations = 200;  ///< used only above the exact-mode feature cap
    std::uint64_t sampled_shapley_seed = 0;
};

/// Request router over one immutable artifact. Safe to call from many threads at once.
///
/// GET  /health       {"status": "ok"}
/// GET  /schema       input fields with units, categories and training ranges
/// GET  /model/meta   learner, hyperparameters and training report
/// POST /predict      record object -> {prediction_kN, extrapolation}; array -> {predictions: [...]}
/// POST /explain      record object (+ "mode": shapley|lime) -> {prediction_kN, base_value, contributions}
///
/// Errors are {code, message, field} with 400 for malformed or invalid input, 422 for an
/// unknown category, 404/405 for routing, 503 when explanation slots stay busy, 500 otherwise.
class PredictionService {
public:
    explicit PredictionService(ModelArtifact artifact, ServiceOptions options = {});
    ~PredictionService();
    PredictionService(const PredictionService&) = delete;
    PredictionService& operator=(const PredictionService&) = delete;

    Response handle(const std::string& method, const std::string& path, const std::string& body) const;

    const ModelArtifact& artifact() const { return artifact_; }

private:
    Response schema() const;
    Response meta() const;
    Response predict(const nlohmann::json& body) const;
    Response explain(const nlohmann::json& body) const;

    ModelArtifact artifact_;
    ServiceOptions options_;
    interpret::FeatureGroups groups_;
    struct Slots;
    std::unique_ptr<Slots> slots_;
};

/// Parses one raw record; throws RequestError naming the offending field (prefixed by `where`).
data::WallRecord record_from_json(const nlohmann::json& j, const data::DatasetSchema& schema,
                                  const std::string& where = {});

class RequestError : public Error {
public:
    RequestError(int status, std::string code, std::string message, std::string field)
        : Error(message), status_(status), code_(std::move(code)), field_(std::move(field)) {}
    int status() const { return status_; }
    const std::string& code() const { return code_; }
    const std::string& field() const { return field_; }

private:
    int status_;
    std::string code_;
    std::string field_;
};

}  // namespace trm::service
