#pragma once

#include <span>

#include "trm/common/types.hpp"

namespace trm::models {

/// Stores the training set; predicts the mean target of the k nearest rows
/// (Euclidean distance, ties broken by lower training row index).
struct KnnModel {
    Matrix X;
    Vector y;
    int k = 5;

    double predict(std::span<const double> x) const;
};

KnnModel fit_knn(const Matrix& X, const Vector& y, int k);

}  // namespace trm::models
