#include "trm/interpret/explain.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "trm/common/error.hpp"
#include "trm/common/random.hpp"

namespace trm::interpret {

Predictor predictor_of(const models::FittedModel& model) {
    return [&model](std::span<const double> x) { return models::predict(model, x); };
}

FeatureGroups singleton_groups(std::size_t n_columns, const std::vector<std::string>& names) {
    FeatureGroups g;
    for (std::size_t j = 0; j < n_columns; ++j) {
        g.columns.push_back({j});
        g.names.push_back(j < names.size() ? names[j] : "x" + std::to_string(j));
    }
    return g;
}

const char* to_string(AttributionMethod m) {
    switch (m) {
        case AttributionMethod::shapley_exact: return "shapley_exact";
        case AttributionMethod::shapley_sampled: return "shapley_sampled";
        case AttributionMethod::lime: return "lime";
    }
    return "shapley_exact";
}

namespace {

void check_inputs(std::span<const double> x, const Matrix& background, const FeatureGroups& groups) {
    if (background.rows() == 0) throw InvalidArgument("explain: empty background dataset");
    if (static_cast<Eigen::Index>(x.size()) != background.cols())
        throw InvalidArgument("explain: instance width does not match the background");
    if (groups.size() == 0) throw InvalidArgument("explain: no features to attribute");
    if (groups.names.size() != groups.size()) throw InvalidArgument("explain: every group needs a name");
    std::vector<int> seen(x.size(), 0);
    for (const auto& g : groups.columns)
        for (auto c : g) {
            if (c >= x.size()) throw InvalidArgument("explain: group column out of range");
            if (seen[c]++) throw InvalidArgument("explain: a column belongs to two groups");
        }
}

// Mean prediction over the background with the players in `mask` taken from x.
class CoalitionValue {
public:
    CoalitionValue(const Predictor& f, std::span<const double> x, const Matrix& background, const FeatureGroups& groups)
        : f_(f), x_(x), bg_(background), groups_(groups), z_(x.size()) {}

    double operator()(std::uint64_t mask) {
        double s = 0.0;
        for (Eigen::Index r = 0; r < bg_.rows(); ++r) {
            const auto row = row_span(bg_, r);
            std::copy(row.begin(), row.end(), z_.begin());
            apply(mask);
            s += f_(z_);
        }
        return s / static_cast<double>(bg_.rows());
    }

    // Prediction for one background row with the first k players of `order` switched to x.
    void start_row(Eigen::Index r) {
        const auto row = row_span(bg_, r);
        std::copy(row.begin(), row.end(), z_.begin());
    }
    void switch_player(std::size_t p) {
        for (auto c : groups_.columns[p]) z_[c] = x_[c];
    }
    double eval() const { return f_(z_); }

private:
    void apply(std::uint64_t mask) {
        for (std::size_t p = 0; p < groups_.size(); ++p)
            if (mask >> p & 1U)
                for (auto c : groups_.columns[p]) z_[c] = x_[c];
    }

    const Predictor& f_;
    std::span<const double> x_;
    const Matrix& bg_;
    const FeatureGroups& groups_;
    std::vector<double> z_;
};

}  // namespace

Attribution shapley_exact(const Predictor& f, std::span<const double> x, const Matrix& background,
                          const FeatureGroups& groups) {
    check_inputs(x, background, groups);
    const std::size_t p = groups.size();
    if (p > kMaxExactPlayers)
        throw InvalidArgument("exact Shapley supports at most " + std::to_string(kMaxExactPlayers) + " features, got " +
                              std::to_string(p) + "; use sampled mode");
    const std::uint64_t full = (std::uint64_t{1} << p) - 1;
    CoalitionValue value(f, x, background, groups);
    std::vector<double> v(full + 1);
    for (std::uint64_t mask = 0; mask <= full; ++mask) v[mask] = value(mask);

    // weight[s] = s!(p-s-1)!/p!
    std::vector<double> weight(p);
    for (std::size_t s = 0; s < p; ++s) {
        double c = 1.0;  // C(p-1, s)
        for (std::size_t k = 1; k <= s; ++k) c = c * static_cast<double>(p - 1 - s + k) / static_cast<double>(k);
        weight[s] = 1.0 / (static_cast<double>(p) * c);
    }

    Attribution a;
    a.method = AttributionMethod::shapley_exact;
    a.names = groups.names;
    a.phi.assign(p, 0.0);
    for (std::size_t i = 0; i < p; ++i) {
        const std::uint64_t bit = std::uint64_t{1} << i;
        double s = 0.0;
        for (std::uint64_t mask = 0; mask <= full; ++mask) {
            if (mask & bit) continue;
            s += weight[static_cast<std::size_t>(std::popcount(mask))] * (v[mask | bit] - v[mask]);
        }
        a.phi[i] = s;
    }
    a.base_value = v[0];
    a.prediction = f(x);
    return a;
}

Attribution shapley_sampled(const Predictor& f, std::span<const double> x, const Matrix& background,
                            const FeatureGroups& groups, std::size_t n_samples, std::uint64_t seed) {
    check_inputs(x, background, groups);
    if (n_samples < 1) throw InvalidArgument("sampled Shapley needs n_samples >= 1");
    const std::size_t p = groups.size();
    CoalitionValue value(f, x, background, groups);
    Rng rng(seed);
    std::vector<double> sum(p, 0.0), sum_sq(p, 0.0), contrib(p);
    const double nb = static_cast<double>(background.rows());
    double base = 0.0;
    for (Eigen::Index r = 0; r < background.rows(); ++r) {
        value.start_row(r);
        base += value.eval();
    }
    base /= nb;

    for (std::size_t s = 0; s < n_samples; ++s) {
        const auto order = rng.permutation(p);
        std::fill(contrib.begin(), contrib.end(), 0.0);
        for (Eigen::Index r = 0; r < background.rows(); ++r) {
            value.start_row(r);
            double prev = value.eval();
            for (std::size_t k = 0; k < p; ++k) {
                value.switch_player(order[k]);
                const double cur = value.eval();
                contrib[order[k]] += cur - prev;
                prev = cur;
            }
        }
        for (std::size_t i = 0; i < p; ++i) {
            const double c = contrib[i] / nb;
            sum[i] += c;
            sum_sq[i] += c * c;
        }
    }
    Attribution a;
    a.method = AttributionMethod::shapley_sampled;
    a.names = groups.names;
    a.base_value = base;
    a.prediction = f(x);
    a.n_samples = n_samples;
    a.seed = seed;
    const double n = static_cast<double>(n_samples);
    for (std::size_t i = 0; i < p; ++i) {
        const double mean = sum[i] / n;
        a.phi.push_back(mean);
        const double var = n > 1 ? std::max(0.0, (sum_sq[i] - n * mean * mean) / (n - 1)) : 0.0;
        a.std_error.push_back(std::sqrt(var / n));
    }
    return a;
}

namespace {

struct Surrogate {
    double intercept = 0.0;
    Vector coef;
};

Surrogate fit_surrogate(const Predictor& f, std::span<const double> x, const LimeOptions& o) {
    const auto d = static_cast<Eigen::Index>(x.size());
    if (d == 0) throw InvalidArgument("lime: empty instance");
    if (o.n_perturbations < 10 * x.size())
        throw InvalidArgument("lime: n_perturbations must be at least 10 x feature count (" +
                              std::to_string(10 * x.size()) + ")");
    if (!(o.perturbation_sd > 0.0)) throw InvalidArgument("lime: perturbation_sd must be > 0");
    const double width = o.kernel_width > 0.0 ? o.kernel_width : 0.75 * std::sqrt(static_cast<double>(d));
    const auto n = static_cast<Eigen::Index>(o.n_perturbations);

    Rng rng(o.seed);
    Eigen::MatrixXd Z(n, d);
    Vector t(n), w(n);
    std::vector<double> z(x.size());
    for (Eigen::Index i = 0; i < n; ++i) {
        double dist2 = 0.0;
        for (Eigen::Index j = 0; j < d; ++j) {
            const double e = rng.normal(0.0, o.perturbation_sd);
            z[static_cast<std::size_t>(j)] = x[static_cast<std::size_t>(j)] + e;
            Z(i, j) = e;
            dist2 += e * e;
        }
        t(i) = f(z);
        w(i) = std::exp(-dist2 / (width * width));
    }
    const double wsum = w.sum();
    if (!(wsum > 0.0) || !t.allFinite()) throw NumericalError("lime: degenerate perturbation weights or predictions");
    // Weighted centering removes the intercept; ridge acts on slopes only.
    const Eigen::RowVectorXd zbar = (w.asDiagonal() * Z).colwise().sum() / wsum;
    const double tbar = w.dot(t) / wsum;
    const Eigen::MatrixXd Zc = Z.rowwise() - zbar;
    const Vector tc = t.array() - tbar;
    Eigen::MatrixXd A = Zc.transpose() * w.asDiagonal() * Zc;
    const double scale = A.diagonal().mean();
    Eigen::FullPivLU<Eigen::MatrixXd> rank_check(A);
    rank_check.setThreshold(1e-10);
    if (rank_check.rank() < d) throw NumericalError("lime: degenerate perturbation matrix");
    A.diagonal().array() += o.ridge * scale;
    Surrogate s;
    s.coef = A.ldlt().solve(Zc.transpose() * (w.asDiagonal() * tc));
    // Surrogate expressed in deviations e = z − x: g(e) = tbar + coef·(e − zbar).
    s.intercept = tbar - zbar.dot(s.coef);
    return s;
}

}  // namespace

std::vector<double> lime_coefficients(const Predictor& f, std::span<const double> x, const LimeOptions& options) {
    const auto s = fit_surrogate(f, x, options);
    return {s.coef.data(), s.coef.data() + s.coef.size()};
}

Attribution lime_explain(const Predictor& f, std::span<const double> x, std::span<const double> reference,
                         const FeatureGroups& groups, const LimeOptions& options) {
    if (reference.size() != x.size()) throw InvalidArgument("lime: reference width does not match the instance");
    const auto s = fit_surrogate(f, x, options);
    Attribution a;
    a.method = AttributionMethod::lime;
    a.names = groups.names;
    a.seed = options.seed;
    a.n_samples = options.n_perturbations;
    // g at the instance is the intercept (deviation 0); contributions move it to the reference.
    double gx = s.intercept;
    double total = 0.0;
    for (const auto& cols : groups.columns) {
        double c = 0.0;
        for (auto j : cols) c += s.coef(static_cast<Eigen::Index>(j)) * (x[j] - reference[j]);
        a.phi.push_back(c);
        total += c;
    }
    a.base_value = gx - total;
    a.prediction = f(x);
    return a;
}

std::vector<std::size_t> background_rows(std::size_t n_rows, std::size_t cap, std::uint64_t seed) {
    std::vector<std::size_t> rows;
    if (n_rows <= cap) {
        for (std::size_t i = 0; i < n_rows; ++i) rows.push_back(i);
        return rows;
    }
    Rng rng(seed);
    auto perm = rng.permutation(n_rows);
    perm.resize(cap);
    std::sort(perm.begin(), perm.end());
    return perm;
}

}  // namespace trm::interpret
