#include "trm/models/knn.hpp"

#include <algorithm>
#include <utility>
#include <vector>

#include "trm/common/error.hpp"

namespace trm::models {

KnnModel fit_knn(const Matrix& X, const Vector& y, int k) {
    if (X.rows() == 0) throw InvalidArgument("knn: empty training store");
    if (y.size() != X.rows()) throw InvalidArgument("knn: X and y differ in length");
    if (k < 1 || k > X.rows())
        throw InvalidArgument("knn: k must lie in [1, " + std::to_string(X.rows()) + "], got " + std::to_string(k));
    return KnnModel{X, y, k};
}

double KnnModel::predict(std::span<const double> x) const {
    if (X.rows() == 0) throw InvalidArgument("knn: empty training store");
    if (static_cast<Eigen::Index>(x.size()) != X.cols()) throw InvalidArgument("knn: query width mismatch");
    std::vector<std::pair<double, Eigen::Index>> dist(static_cast<std::size_t>(X.rows()));
    for (Eigen::Index r = 0; r < X.rows(); ++r) {
        double s = 0.0;
        for (Eigen::Index c = 0; c < X.cols(); ++c) {
            const double d = X(r, c) - x[static_cast<std::size_t>(c)];
            s += d * d;
        }
        dist[static_cast<std::size_t>(r)] = {s, r};
    }
    const auto kk = static_cast<std::size_t>(std::min<Eigen::Index>(k, X.rows()));
    std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(kk), dist.end());
    double sum = 0.0;
    for (std::size_t i = 0; i < kk; ++i) sum += y(dist[i].second);
    return sum / static_cast<double>(kk);
}

}  // namespace trm::models
