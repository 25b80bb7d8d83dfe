#include "trm/data/cooks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include <spdlog/spdlog.h>

#include "trm/common/error.hpp"

namespace trm::data {

CooksReport cooks_distance(const Matrix& X, const Vector& y, const std::vector<RowId>& row_ids,
                           const std::vector<std::string>& column_names, double threshold_factor) {
    const auto n = X.rows();
    const auto p = X.cols() + 1;
    if (y.size() != n || static_cast<Eigen::Index>(row_ids.size()) != n)
        throw InvalidArgument("cooks_distance: rows, target and ids differ in length");
    if (n <= p)
        throw InvalidArgument("cooks_distance needs more rows (" + std::to_string(n) + ") than coefficients (" +
                              std::to_string(p) + ")");

    Eigen::MatrixXd design(n, p);
    design.col(0).setOnes();
    design.rightCols(p - 1) = X;

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    if (qr.rank() < p) {
        auto name_of = [&](Eigen::Index c) {
            if (c == 0) return std::string("intercept");
            return static_cast<std::size_t>(c - 1) < column_names.size() ? column_names[c - 1]
                                                                         : "x" + std::to_string(c - 1);
        };
        // Each dependent column is a combination of pivot columns: R11 * coef = R12.
        const auto r = qr.rank();
        const Eigen::MatrixXd R = qr.matrixR().topLeftCorner(p, p).template triangularView<Eigen::Upper>();
        const auto& perm = qr.colsPermutation().indices();
        std::string groups;
        for (Eigen::Index k = r; k < p; ++k) {
            const Eigen::VectorXd coef =
                R.topLeftCorner(r, r).triangularView<Eigen::Upper>().solve(R.block(0, k, r, 1));
            std::string group = name_of(perm(k));
            for (Eigen::Index i = 0; i < r; ++i)
                if (std::abs(coef(i)) > 1e-8) group += " ~ " + name_of(perm(i));
            groups += (groups.empty() ? "" : "; ") + group;
        }
        throw NumericalError("rank-deficient design matrix; collinear columns: " + groups);
    }

    const Eigen::VectorXd beta = qr.solve(y);
    const Eigen::VectorXd residual = y - design * beta;
    const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, p);

    CooksReport report;
    report.p = static_cast<std::size_t>(p);
    report.row_ids = row_ids;
    report.threshold_factor = threshold_factor;
    report.design_columns.push_back("intercept");
    for (Eigen::Index c = 0; c < X.cols(); ++c)
        report.design_columns.push_back(static_cast<std::size_t>(c) < column_names.size()
                                            ? column_names[c]
                                            : "x" + std::to_string(c));

    const double sse = residual.squaredNorm();
    report.mse = sse / static_cast<double>(n - p);
    const double centered = (y.array() - y.mean()).square().sum();
    const double scale = std::max(centered, y.squaredNorm());
    report.distances.assign(static_cast<std::size_t>(n), 0.0);
    // An exact fit leaves every leave-one-out prediction unchanged.
    if (sse <= 1e-24 * std::max(scale, 1.0)) {
        report.threshold = 0.0;
        return report;
    }

    const double denom = static_cast<double>(p) * report.mse;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double h = q.row(i).squaredNorm();
        const double one_minus = 1.0 - h;
        report.distances[static_cast<std::size_t>(i)] =
            one_minus <= 1e-12 ? std::numeric_limits<double>::infinity()
                               : residual(i) * residual(i) / denom * h / (one_minus * one_minus);
    }

    double mean = 0.0;
    for (double d : report.distances) mean += d;
    mean /= static_cast<double>(n);
    report.threshold = threshold_factor * mean;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double d = report.distances[static_cast<std::size_t>(i)];
        if (d > report.threshold || std::isinf(d)) report.flagged.push_back(row_ids[static_cast<std::size_t>(i)]);
    }
    return report;
}

CooksReport cooks_distance(const TabularDataset& ds, double threshold_factor) {
    if (ds.stage == Stage::raw) throw InvalidArgument("cooks_distance expects an encoded or scaled dataset");

    std::vector<std::size_t> keep;
    std::set<std::string> groups_with_reference;
    for (std::size_t j = 0; j < ds.columns.size(); ++j) {
        const auto& col = ds.columns[j];
        if (col.kind == ColumnKind::binary) {
            if (ds.features.col(static_cast<Eigen::Index>(j)).maxCoeff() == 0.0) continue;  // absent category
            if (groups_with_reference.insert(col.group).second) continue;                   // reference level
        }
        keep.push_back(j);
    }

    Matrix X(ds.features.rows(), static_cast<Eigen::Index>(keep.size()));
    std::vector<std::string> names;
    for (std::size_t k = 0; k < keep.size(); ++k) {
        X.col(static_cast<Eigen::Index>(k)) = ds.features.col(static_cast<Eigen::Index>(keep[k]));
        names.push_back(ds.columns[keep[k]].name);
    }
    return cooks_distance(X, ds.target, ds.row_ids, names, threshold_factor);
}

TabularDataset remove_outliers(const TabularDataset& ds, const CooksReport& report) {
    const std::set<RowId> flagged(report.flagged.begin(), report.flagged.end());
    std::vector<std::size_t> survivors;
    for (std::size_t i = 0; i < ds.size(); ++i)
        if (!flagged.contains(ds.row_ids[i])) survivors.push_back(i);
    for (RowId id : report.flagged) spdlog::info("removing outlier row {} (Cook's distance above {:.4g})", id, report.threshold);
    return select_rows(ds, survivors);
}

}  // namespace trm::data
