#include "trm/selection/metrics.hpp"

#include <cmath>

#include "trm/common/error.hpp"

namespace trm::selection {

MetricSet compute_metrics(const Vector& y, const Vector& y_hat) {
    if (y.size() != y_hat.size()) throw InvalidArgument("metrics: y and y_hat differ in length");
    if (y.size() < 2) throw InvalidArgument("metrics: at least two values are required");
    const auto n = static_cast<double>(y.size());
    const double mean = y.mean();
    double ss_res = 0.0, ss_tot = 0.0, abs_sum = 0.0, ape = 0.0;
    MetricSet m;
    for (Eigen::Index i = 0; i < y.size(); ++i) {
        const double e = y(i) - y_hat(i);
        ss_res += e * e;
        ss_tot += (y(i) - mean) * (y(i) - mean);
        abs_sum += std::abs(e);
        if (y(i) == 0.0)
            m.mape_defined = false;
        else
            ape += std::abs(e / y(i));
    }
    m.mse = ss_res / n;
    m.rmse = std::sqrt(m.mse);
    m.mae = abs_sum / n;
    m.mape = m.mape_defined ? ape / n : std::nan("");
    m.r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : (ss_res == 0.0 ? 1.0 : 0.0);
    return m;
}

}  // namespace trm::selection
