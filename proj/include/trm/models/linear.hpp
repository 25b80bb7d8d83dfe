#pragma once

#include <span>

#include "trm/common/error.hpp"
#include "trm/common/types.hpp"

namespace trm::models {

/// y ~ weights·x + intercept, fitted by minimizing
///   1/(2m)·||y − Xw − b||² + α·ρ·||w||₁ + α·(1−ρ)/2·||w||²
/// with the intercept left unpenalized.
struct LinearModel {
    Vector weights;
    double intercept = 0.0;
    double alpha = 0.0;
    double l1_ratio = 0.0;
    int iterations = 0;

    double predict(std::span<const double> x) const;
};

class ConvergenceError : public NumericalError {
public:
    ConvergenceError(const std::string& message, Vector last_weights, double last_change)
        : NumericalError(message), last_weights_(std::move(last_weights)), last_change_(last_change) {}

    const Vector& last_weights() const noexcept { return last_weights_; }
    double last_change() const noexcept { return last_change_; }

private:
    Vector last_weights_;
    double last_change_;
};

/// Closed form when ρ = 0 (QR for α = 0), cyclic coordinate descent otherwise.
/// Coordinate descent stops once the largest coefficient change in a sweep is below tol.
LinearModel fit_linear(const Matrix& X, const Vector& y, double alpha, double l1_ratio, int max_iter = 10000,
                       double tol = 1e-8);

/// Intercept-only model predicting the training mean.
LinearModel fit_mean(const Matrix& X, const Vector& y);

}  // namespace trm::models
