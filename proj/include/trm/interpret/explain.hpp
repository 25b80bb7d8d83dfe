#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "trm/common/types.hpp"
#include "trm/models/model.hpp"

namespace trm::interpret {

using Predictor = std::function<double(std::span<const double>)>;

Predictor predictor_of(const models::FittedModel& model);

/// Players of the attribution game. Each group is a set of input columns that
/// enter or leave a coalition together (e.g. the one-hot columns of one raw field).
struct FeatureGroups {
    std::vector<std::vector<std::size_t>> columns;
    std::vector<std::string> names;

    std::size_t size() const { return columns.size(); }
};

/// One group per column, named after `names` (or x0, x1, ...).
FeatureGroups singleton_groups(std::size_t n_columns, const std::vector<std::string>& names = {});

enum class AttributionMethod { shapley_exact, shapley_sampled, lime };

const char* to_string(AttributionMethod m);

struct Attribution {
    AttributionMethod method = AttributionMethod::shapley_exact;
    std::vector<std::string> names;
    double base_value = 0.0;
    std::vector<double> phi;
    double prediction = 0.0;
    std::vector<double> std_error;  ///< sampled Shapley only: standard error of each phi
    std::size_t n_samples = 0;
    std::uint64_t seed = 0;
};

constexpr std::size_t kMaxExactPlayers = 14;

/// Interventional Shapley values: v(S) is the mean prediction over background rows whose
/// columns in S are replaced by x. Enumerates all 2^p coalitions; p <= 14.
Attribution shapley_exact(const Predictor& f, std::span<const double> x, const Matrix& background,
                          const FeatureGroups& groups);

/// Permutation sampling: each of n_samples random player orders is scored against every
/// background row, so base_value + Σφ = f(x) holds exactly for any sample count.
Attribution shapley_sampled(const Predictor& f, std::span<const double> x, const Matrix& background,
                            const FeatureGroups& groups, std::size_t n_samples, std::uint64_t seed);

struct LimeOptions {
    std::size_t n_perturbations = 1000;
    double kernel_width = 0.0;  ///< <= 0 selects 0.75·sqrt(column count)
    double perturbation_sd = 1.0;  ///< Gaussian noise in scaled units
    double ridge = 1e-3;
    std::uint64_t seed = 0;
};

/// Local weighted-ridge surrogate g(z) = a + bᵀz fitted on Gaussian perturbations of x with
/// kernel weights exp(−d²/width²). Contributions are b_j·(x_j − reference_j), summed per group;
/// base_value is g(reference), so base_value + Σφ = g(x).
Attribution lime_explain(const Predictor& f, std::span<const double> x, std::span<const double> reference,
                         const FeatureGroups& groups, const LimeOptions& options);

/// Surrogate slopes of the last lime fit, exposed for checking against analytic derivatives.
std::vector<double> lime_coefficients(const Predictor& f, std::span<const double> x, const LimeOptions& options);

/// Seeded uniform subsample of at most `cap` rows, kept in original order.
std::vector<std::size_t> background_rows(std::size_t n_rows, std::size_t cap, std::uint64_t seed);

}  // namespace trm::interpret
