#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "trm/models/model.hpp"

namespace trm::selection {

struct CurvePoint {
    double fraction = 0.0;
    std::size_t n_train = 0;  ///< rows used for fitting in every fold
    double train_r2_mean = 0.0;
    double train_r2_std = 0.0;
    double cv_r2_mean = 0.0;
    double cv_r2_std = 0.0;
};

/// For every fraction, each of the k folds fits on the first ceil(fraction·|train fold|) rows of a
/// seeded shuffle of that fold's training part and scores on its validation part.
/// Fractions must ascend within (0, 1]; sizes below two rows are skipped with a warning.
std::vector<CurvePoint> learning_curve(models::Learner learner, const models::Params& params, const Matrix& X,
                                       const Vector& y, const std::vector<double>& fractions, std::size_t k,
                                       std::uint64_t seed);

void write_learning_curve_csv(std::ostream& out, const std::vector<CurvePoint>& points);

}  // namespace trm::selection
