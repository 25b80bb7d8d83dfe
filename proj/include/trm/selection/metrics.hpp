#pragma once

#include "trm/common/types.hpp"

namespace trm::selection {

struct MetricSet {
    double r2 = 0.0;
    double mse = 0.0;
    double rmse = 0.0;  ///< kN
    double mae = 0.0;   ///< kN
    double mape = 0.0;  ///< ratio, not percent
    bool mape_defined = true;  ///< false when some target is zero
};

/// R² = 1 − SS_res/SS_tot; a constant target gives 1 for a perfect fit, 0 otherwise.
MetricSet compute_metrics(const Vector& y, const Vector& y_hat);

}  // namespace trm::selection
