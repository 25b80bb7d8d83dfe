#include "trm/models/linear.hpp"

#include <cmath>

namespace trm::models {

double LinearModel::predict(std::span<const double> x) const {
    double s = intercept;
    for (Eigen::Index j = 0; j < weights.size(); ++j) s += weights(j) * x[static_cast<std::size_t>(j)];
    return s;
}

namespace {

double soft_threshold(double z, double gamma) {
    if (z > gamma) return z - gamma;
    if (z < -gamma) return z + gamma;
    return 0.0;
}

}  // namespace

LinearModel fit_linear(const Matrix& X, const Vector& y, double alpha, double l1_ratio, int max_iter, double tol) {
    if (X.cols() < 1) throw InvalidArgument("fit_linear: X needs at least one column");
    if (X.rows() < 2) throw InvalidArgument("fit_linear: at least two rows are required");
    if (y.size() != X.rows()) throw InvalidArgument("fit_linear: X and y differ in length");
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw InvalidArgument("fit_linear: alpha must be finite and >= 0");
    if (!(l1_ratio >= 0.0 && l1_ratio <= 1.0)) throw InvalidArgument("fit_linear: l1_ratio must lie in [0, 1]");
    if (max_iter < 1) throw InvalidArgument("fit_linear: max_iter must be >= 1");

    const auto m = static_cast<double>(X.rows());
    const Eigen::RowVectorXd x_mean = X.colwise().mean();
    const double y_mean = y.mean();
    const Eigen::MatrixXd Xc = X.rowwise() - x_mean;
    const Vector yc = y.array() - y_mean;

    LinearModel model;
    model.alpha = alpha;
    model.l1_ratio = l1_ratio;

    if (alpha == 0.0) {
        model.weights = Xc.colPivHouseholderQr().solve(yc);
    } else if (l1_ratio == 0.0) {
        Eigen::MatrixXd A = Xc.transpose() * Xc;
        A.diagonal().array() += m * alpha;
        model.weights = A.ldlt().solve(Xc.transpose() * yc);
    } else {
        const auto d = Xc.cols();
        const Vector col_sq = Xc.colwise().squaredNorm().transpose();
        const double l1 = m * alpha * l1_ratio;
        const double l2 = m * alpha * (1.0 - l1_ratio);
        Vector w = Vector::Zero(d);
        Vector r = yc;
        double change = 0.0;
        int it = 0;
        for (; it < max_iter; ++it) {
            change = 0.0;
            for (Eigen::Index j = 0; j < d; ++j) {
                if (col_sq(j) == 0.0) continue;
                const double old = w(j);
                const double rho_j = Xc.col(j).dot(r) + col_sq(j) * old;
                const double fresh = soft_threshold(rho_j, l1) / (col_sq(j) + l2);
                if (fresh != old) {
                    r.noalias() -= (fresh - old) * Xc.col(j);
                    w(j) = fresh;
                    change = std::max(change, std::abs(fresh - old));
                }
            }
            if (change < tol) break;
        }
        if (it == max_iter)
            throw ConvergenceError("fit_linear: coordinate descent did not converge in " + std::to_string(max_iter) +
                                       " iterations (last change " + std::to_string(change) + ")",
                                   w, change);
        model.weights = w;
        model.iterations = it + 1;
    }
    if (!model.weights.allFinite()) throw NumericalError("fit_linear: non-finite coefficients");
    model.intercept = y_mean - x_mean.dot(model.weights);
    return model;
}

LinearModel fit_mean(const Matrix& X, const Vector& y) {
    if (y.size() < 1) throw InvalidArgument("fit_mean: empty target");
    LinearModel model;
    model.weights = Vector::Zero(X.cols());
    model.intercept = y.mean();
    return model;
}

}  // namespace trm::models
