#pragma once

// Leave-one-out Cook's distance: refit OLS n times and evaluate the definition directly.

#include <Eigen/Dense>

#include <vector>

namespace trm::testing {

inline Eigen::VectorXd ols_fit_with_intercept(const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
    Eigen::MatrixXd A(X.rows(), X.cols() + 1);
    A.col(0).setOnes();
    A.rightCols(X.cols()) = X;
    // Normal equations solved with a full-pivot LU; independent of the QR route under test.
    return (A.transpose() * A).fullPivLu().solve(A.transpose() * y);
}

inline Eigen::VectorXd ols_predict(const Eigen::VectorXd& beta, const Eigen::MatrixXd& X) {
    return (X * beta.tail(X.cols())).array() + beta(0);
}

inline std::vector<double> cooks_leave_one_out(const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
    const auto n = X.rows();
    const auto p = X.cols() + 1;
    const auto beta = ols_fit_with_intercept(X, y);
    const Eigen::VectorXd yhat = ols_predict(beta, X);
    const double mse = (y - yhat).squaredNorm() / static_cast<double>(n - p);

    std::vector<double> d(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        Eigen::MatrixXd Xi(n - 1, X.cols());
        Eigen::VectorXd yi(n - 1);
        for (Eigen::Index r = 0, k = 0; r < n; ++r) {
            if (r == i) continue;
            Xi.row(k) = X.row(r);
            yi(k) = y(r);
            ++k;
        }
        const Eigen::VectorXd yhat_i = ols_predict(ols_fit_with_intercept(Xi, yi), X);
        d[static_cast<std::size_t>(i)] = (yhat - yhat_i).squaredNorm() / (static_cast<double>(p) * mse);
    }
    return d;
}

}  // namespace trm::testing
