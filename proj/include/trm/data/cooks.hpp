#pragma once

#include <string>
#include <vector>

#include "trm/common/types.hpp"
#include "trm/data/dataset.hpp"

namespace trm::data {

struct CooksReport {
    std::vector<double> distances;          ///< D_i, aligned with row_ids
    std::vector<RowId> row_ids;
    std::size_t p = 0;                      ///< regression coefficients including the intercept
    double mse = 0.0;                       ///< residual mean square SSE / (n - p) of the full fit
    double threshold_factor = 3.0;
    double threshold = 0.0;                 ///< threshold_factor * mean(D)
    std::vector<RowId> flagged;
    std::vector<std::string> design_columns;  ///< regressors used, intercept first
};

/// Cook's distance of an OLS fit of y on [1, X] through the leverage closed form
///   D_i = e_i^2 / (p * s^2) * h_ii / (1 - h_ii)^2
/// which equals the leave-one-out definition sum_j (yhat_j - yhat_j(i))^2 / (p * s^2).
/// Rows with D_i > factor * mean(D) are flagged. Throws NumericalError naming the
/// collinear columns when the design is rank deficient.
CooksReport cooks_distance(const Matrix& X, const Vector& y, const std::vector<RowId>& row_ids,
                           const std::vector<std::string>& column_names, double threshold_factor = 3.0);

/// Dataset entry point. One-hot groups enter the design with their first present
/// category as the reference level, which leaves the fitted values unchanged and
/// keeps the design full rank next to the intercept.
CooksReport cooks_distance(const TabularDataset& ds, double threshold_factor = 3.0);

/// Drops the flagged rows; survivors keep their row ids and order.
TabularDataset remove_outliers(const TabularDataset& ds, const CooksReport& report);

}  // namespace trm::data
