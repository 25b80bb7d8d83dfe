#include "trm/interpret/dependence.hpp"

#include <algorithm>
#include <sstream>

#include <spdlog/spdlog.h>

#include "trm/common/error.hpp"

namespace trm::interpret {

std::vector<double> dependence_grid(const Matrix& X, std::size_t column, std::size_t n_points) {
    if (X.rows() == 0) throw InvalidArgument("dependence: empty dataset");
    if (static_cast<Eigen::Index>(column) >= X.cols()) throw InvalidArgument("dependence: column out of range");
    const auto c = X.col(static_cast<Eigen::Index>(column));
    const double lo = c.minCoeff(), hi = c.maxCoeff();
    if (lo == hi) return {lo};
    if ((c.array() == 0.0 || c.array() == 1.0).all()) return {0.0, 1.0};
    if (n_points < 2) throw InvalidArgument("dependence: grid needs at least 2 points");
    std::vector<double> g(n_points);
    for (std::size_t i = 0; i < n_points; ++i)
        g[i] = i + 1 == n_points ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n_points - 1);
    return g;
}

Dependence ice_pdp(const Predictor& f, const Matrix& X, std::size_t column, const std::string& name,
                   std::size_t n_points, const std::vector<std::size_t>& row_ids) {
    Dependence d;
    d.feature = name;
    d.column = column;
    d.grid = dependence_grid(X, column, n_points);
    if (d.grid.size() == 1) spdlog::warn("'{}' is constant; its dependence curve is a single point", name);
    if (row_ids.empty()) {
        for (Eigen::Index r = 0; r < X.rows(); ++r) d.row_ids.push_back(static_cast<std::size_t>(r));
    } else {
        d.row_ids = row_ids;
    }
    std::vector<double> z(static_cast<std::size_t>(X.cols()));
    for (auto r : d.row_ids) {
        if (static_cast<Eigen::Index>(r) >= X.rows()) throw InvalidArgument("dependence: row id out of range");
        const auto row = row_span(X, static_cast<Eigen::Index>(r));
        std::copy(row.begin(), row.end(), z.begin());
        std::vector<double> curve;
        for (double g : d.grid) {
            z[column] = g;
            curve.push_back(f(z));
        }
        d.ice.push_back(std::move(curve));
    }
    d.pdp.assign(d.grid.size(), 0.0);
    for (std::size_t g = 0; g < d.grid.size(); ++g) {
        double s = 0.0;
        for (const auto& curve : d.ice) s += curve[g];
        d.pdp[g] = s / static_cast<double>(d.ice.size());
    }
    return d;
}

void write_dependence_csv(std::ostream& out, const std::vector<Dependence>& curves) {
    out.precision(17);
    out << "feature,row,grid_value,prediction\n";
    for (const auto& d : curves) {
        for (std::size_t i = 0; i < d.ice.size(); ++i)
            for (std::size_t g = 0; g < d.grid.size(); ++g)
                out << d.feature << ',' << d.row_ids[i] << ',' << d.grid[g] << ',' << d.ice[i][g] << '\n';
        for (std::size_t g = 0; g < d.grid.size(); ++g)
            out << d.feature << ",pdp," << d.grid[g] << ',' << d.pdp[g] << '\n';
    }
}

std::string tree_to_dot(const models::DecisionTree& tree, const std::vector<std::string>& feature_names) {
    std::ostringstream os;
    os.precision(6);
    os << "digraph tree {\n  node [shape=box, fontname=\"helvetica\"];\n";
    for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
        const auto& n = tree.nodes[i];
        os << "  n" << i << " [label=\"";
        if (n.is_leaf()) {
            os << "value = " << n.value << "\\nsamples = " << n.n_samples;
        } else {
            const auto f = static_cast<std::size_t>(n.feature);
            os << (f < feature_names.size() ? feature_names[f] : "x" + std::to_string(f)) << " <= " << n.threshold
               << "\\nsamples = " << n.n_samples << "\\nvalue = " << n.value;
        }
        os << "\"];\n";
    }
    for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
        const auto& n = tree.nodes[i];
        if (n.is_leaf()) continue;
        os << "  n" << i << " -> n" << n.left << " [label=\"yes\"];\n";
        os << "  n" << i << " -> n" << n.right << " [label=\"no\"];\n";
    }
    os << "}\n";
    return os.str();
}

std::string tree_to_dot(const models::FittedModel& model, std::size_t tree_index,
                        const std::vector<std::string>& feature_names) {
    const auto trees = models::model_trees(model);
    if (trees.empty())
        throw InvalidArgument(std::string("tree export requires a tree-based model, got ") +
                              models::to_string(model.learner));
    if (tree_index >= trees.size())
        throw InvalidArgument("tree index " + std::to_string(tree_index) + " out of range (model has " +
                              std::to_string(trees.size()) + " trees)");
    return tree_to_dot(*trees[tree_index], feature_names);
}

}  // namespace trm::interpret
