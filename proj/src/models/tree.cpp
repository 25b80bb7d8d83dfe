#include "trm/models/tree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "trm/common/error.hpp"

namespace trm::models {
namespace {

constexpr double kNoGain = -std::numeric_limits<double>::infinity();

struct Split {
    int feature = -1;
    double threshold = 0.0;
    double gain = kNoGain;
};

double midpoint(double a, double b) {
    const double m = a + (b - a) / 2.0;
    return m >= b ? a : m;
}

double squared_gain(double n_l, double s_l, double n_r, double s_r) {
    const double diff = s_l / n_l - s_r / n_r;
    return n_l * n_r / (n_l + n_r) * diff * diff;
}

double newton_gain(double n_l, double s_l, double n_r, double s_r, double l2) {
    if (n_l == 0.0 || n_r == 0.0) return 0.0;
    const double s = s_l + s_r;
    return s_l * s_l / (n_l + l2) + s_r * s_r / (n_r + l2) - s * s / (n_l + n_r + l2);
}

double xlogmean(double sum, double n) { return sum * std::log(sum / n); }

double poisson_gain(double n_l, double s_l, double n_r, double s_r) {
    return xlogmean(s_l, n_l) + xlogmean(s_r, n_r) - xlogmean(s_l + s_r, n_l + n_r);
}

double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const auto n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// Sum of absolute deviations from the median of an ascending sequence.
double abs_dev_sorted(const std::vector<double>& sorted) {
    const auto n = sorted.size();
    if (n == 0) return 0.0;
    const double med = n % 2 == 1 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
    double s = 0.0;
    for (double v : sorted) s += std::abs(v - med);
    return s;
}

double abs_dev(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return abs_dev_sorted(v);
}

class Grower {
public:
    Grower(const Matrix& X, const Vector& t, const GrowOptions& o, Rng* rng)
        : X_(X), t_(t), o_(o), rng_(rng) {
        if ((o.max_features > 0 || o.random_thresholds) && rng == nullptr)
            throw InvalidArgument("grow_tree: randomized growth needs an Rng");
        if (o.bins != nullptr && (o.criterion == Criterion::absolute_error || o.criterion == Criterion::poisson))
            throw InvalidArgument("grow_tree: histogram search supports squared-error scoring only");
        tree_.n_features = static_cast<std::size_t>(X.cols());
    }

    DecisionTree run(std::span<const std::size_t> rows) {
        idx_.assign(rows.begin(), rows.end());
        if (idx_.empty()) throw InvalidArgument("grow_tree: no rows");
        build(0, idx_.size(), 0);
        return std::move(tree_);
    }

private:
    int build(std::size_t begin, std::size_t end, int depth) {
        const std::size_t n = end - begin;
        double sum = 0.0, lo = std::numeric_limits<double>::infinity(), hi = -lo;
        for (std::size_t k = begin; k < end; ++k) {
            const double v = t_(static_cast<Eigen::Index>(idx_[k]));
            sum += v;
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        const double mean = sum / static_cast<double>(n);
        double sse = 0.0;
        for (std::size_t k = begin; k < end; ++k) {
            const double d = t_(static_cast<Eigen::Index>(idx_[k])) - mean;
            sse += d * d;
        }

        TreeNode node;
        node.n_samples = n;
        node.sum_squared_residual = sse;
        if (o_.newton) {
            node.value = sum / (static_cast<double>(n) + o_.l2_leaf);
        } else if (o_.criterion == Criterion::absolute_error) {
            std::vector<double> v;
            for (std::size_t k = begin; k < end; ++k) v.push_back(t_(static_cast<Eigen::Index>(idx_[k])));
            node.value = median_of(std::move(v));
        } else {
            node.value = mean;
        }
        const int id = static_cast<int>(tree_.nodes.size());
        tree_.nodes.push_back(node);

        const bool depth_ok = o_.max_depth <= 0 || depth < o_.max_depth;
        const bool pure = lo == hi;
        if (!depth_ok || pure || n < o_.min_samples_split || n < 2 * o_.min_samples_leaf) return id;

        const Split best = find_split(begin, end);
        if (best.feature < 0 || !(best.gain > 0.0)) return id;

        const auto f = static_cast<Eigen::Index>(best.feature);
        const auto mid = std::stable_partition(idx_.begin() + static_cast<std::ptrdiff_t>(begin),
                                               idx_.begin() + static_cast<std::ptrdiff_t>(end),
                                               [&](std::size_t r) {
                                                   return X_(static_cast<Eigen::Index>(r), f) <= best.threshold;
                                               });
        const auto split_at = static_cast<std::size_t>(mid - idx_.begin());
        if (split_at == begin || split_at == end) return id;

        const int left = build(begin, split_at, depth + 1);
        const int right = build(split_at, end, depth + 1);
        auto& stored = tree_.nodes[static_cast<std::size_t>(id)];
        stored.feature = best.feature;
        stored.threshold = best.threshold;
        stored.left = left;
        stored.right = right;
        return id;
    }

    std::vector<std::size_t> candidate_features() {
        const auto d = static_cast<std::size_t>(X_.cols());
        std::vector<std::size_t> f(d);
        std::iota(f.begin(), f.end(), 0);
        if (o_.max_features == 0 || o_.max_features >= d) return f;
        for (std::size_t i = 0; i < o_.max_features; ++i) {
            const auto j = i + static_cast<std::size_t>(rng_->below(d - i));
            std::swap(f[i], f[j]);
        }
        f.resize(o_.max_features);
        std::sort(f.begin(), f.end());
        return f;
    }

    Split find_split(std::size_t begin, std::size_t end) {
        Split best;
        for (std::size_t f : candidate_features()) {
            Split s;
            if (o_.bins != nullptr)
                s = binned_split(f, begin, end);
            else if (o_.random_thresholds)
                s = random_split(f, begin, end);
            else
                s = exact_split(f, begin, end);
            if (s.gain > best.gain) best = s;
        }
        return best;
    }

    double pair_gain(double n_l, double s_l, double n_r, double s_r) const {
        if (o_.newton) return newton_gain(n_l, s_l, n_r, s_r, o_.l2_leaf);
        if (o_.criterion == Criterion::poisson) return poisson_gain(n_l, s_l, n_r, s_r);
        return squared_gain(n_l, s_l, n_r, s_r);
    }

    Split exact_split(std::size_t f, std::size_t begin, std::size_t end) {
        const auto n = end - begin;
        pairs_.clear();
        for (std::size_t k = begin; k < end; ++k) {
            const auto r = static_cast<Eigen::Index>(idx_[k]);
            pairs_.push_back({X_(r, static_cast<Eigen::Index>(f)), t_(r)});
        }
        std::sort(pairs_.begin(), pairs_.end());

        Split best;
        best.feature = static_cast<int>(f);
        const auto min_leaf = o_.min_samples_leaf;

        if (o_.criterion == Criterion::absolute_error && !o_.newton) {
            // Prefix/suffix absolute deviations, O(n^2) per feature.
            std::vector<double> left_dev(n + 1, 0.0), right_dev(n + 1, 0.0);
            std::vector<double> sorted;
            for (std::size_t i = 0; i < n; ++i) {
                sorted.insert(std::upper_bound(sorted.begin(), sorted.end(), pairs_[i].second), pairs_[i].second);
                left_dev[i + 1] = abs_dev_sorted(sorted);
            }
            sorted.clear();
            for (std::size_t i = n; i-- > 0;) {
                sorted.insert(std::upper_bound(sorted.begin(), sorted.end(), pairs_[i].second), pairs_[i].second);
                right_dev[i] = abs_dev_sorted(sorted);
            }
            const double parent = left_dev[n];
            for (std::size_t i = min_leaf; i + min_leaf <= n; ++i) {
                if (!(pairs_[i - 1].first < pairs_[i].first)) continue;
                const double gain = parent - left_dev[i] - right_dev[i];
                if (gain > best.gain) {
                    best.gain = gain;
                    best.threshold = midpoint(pairs_[i - 1].first, pairs_[i].first);
                }
            }
            return best;
        }

        double total = 0.0;
        for (const auto& p : pairs_) total += p.second;
        double s_l = 0.0;
        for (std::size_t i = 1; i < n; ++i) {
            s_l += pairs_[i - 1].second;
            if (i < min_leaf || n - i < min_leaf) continue;
            if (!(pairs_[i - 1].first < pairs_[i].first)) continue;
            const double n_l = static_cast<double>(i);
            const double gain = pair_gain(n_l, s_l, static_cast<double>(n) - n_l, total - s_l);
            if (gain > best.gain) {
                best.gain = gain;
                best.threshold = midpoint(pairs_[i - 1].first, pairs_[i].first);
            }
        }
        return best;
    }

    Split random_split(std::size_t f, std::size_t begin, std::size_t end) {
        const auto col = static_cast<Eigen::Index>(f);
        double lo = std::numeric_limits<double>::infinity(), hi = -lo;
        for (std::size_t k = begin; k < end; ++k) {
            const double x = X_(static_cast<Eigen::Index>(idx_[k]), col);
            lo = std::min(lo, x);
            hi = std::max(hi, x);
        }
        Split s;
        s.feature = static_cast<int>(f);
        if (!(lo < hi)) return s;
        double thr = rng_->uniform(lo, hi);
        if (thr >= hi) thr = lo;

        std::vector<double> left, right;
        double s_l = 0.0, s_r = 0.0;
        for (std::size_t k = begin; k < end; ++k) {
            const auto r = static_cast<Eigen::Index>(idx_[k]);
            const double v = t_(r);
            if (X_(r, col) <= thr) {
                left.push_back(v);
                s_l += v;
            } else {
                right.push_back(v);
                s_r += v;
            }
        }
        if (left.size() < o_.min_samples_leaf || right.size() < o_.min_samples_leaf) return s;
        s.threshold = thr;
        if (o_.criterion == Criterion::absolute_error && !o_.newton) {
            std::vector<double> all = left;
            all.insert(all.end(), right.begin(), right.end());
            s.gain = abs_dev(all) - abs_dev(left) - abs_dev(right);
        } else {
            s.gain = pair_gain(static_cast<double>(left.size()), s_l, static_cast<double>(right.size()), s_r);
        }
        return s;
    }

    Split binned_split(std::size_t f, std::size_t begin, std::size_t end) {
        const auto& edges = o_.bins->edges[f];
        const auto& codes = o_.bins->codes[f];
        const std::size_t n_bins = edges.size() + 1;
        count_.assign(n_bins, 0.0);
        sum_.assign(n_bins, 0.0);
        double total = 0.0;
        for (std::size_t k = begin; k < end; ++k) {
            const auto r = idx_[k];
            const double v = t_(static_cast<Eigen::Index>(r));
            count_[codes[r]] += 1.0;
            sum_[codes[r]] += v;
            total += v;
        }
        Split best;
        best.feature = static_cast<int>(f);
        const double n = static_cast<double>(end - begin);
        const double min_leaf = static_cast<double>(o_.min_samples_leaf);
        double n_l = 0.0, s_l = 0.0;
        for (std::size_t b = 0; b + 1 < n_bins; ++b) {
            if (count_[b] == 0.0) continue;  // same partition as the previous edge
            n_l += count_[b];
            s_l += sum_[b];
            if (n_l < min_leaf || n - n_l < min_leaf) continue;
            const double gain = pair_gain(n_l, s_l, n - n_l, total - s_l);
            if (gain > best.gain) {
                best.gain = gain;
                best.threshold = edges[b];
            }
        }
        return best;
    }

    const Matrix& X_;
    const Vector& t_;
    const GrowOptions& o_;
    Rng* rng_;
    DecisionTree tree_;
    std::vector<std::size_t> idx_;
    std::vector<std::pair<double, double>> pairs_;
    std::vector<double> count_, sum_;
};

}  // namespace

Criterion criterion_from_string(const std::string& s) {
    if (s == "squared_error") return Criterion::squared_error;
    if (s == "friedman_mse") return Criterion::friedman_mse;
    if (s == "absolute_error") return Criterion::absolute_error;
    if (s == "poisson") return Criterion::poisson;
    throw InvalidArgument("unknown split criterion '" + s + "'");
}

const char* to_string(Criterion c) {
    switch (c) {
        case Criterion::squared_error: return "squared_error";
        case Criterion::friedman_mse: return "friedman_mse";
        case Criterion::absolute_error: return "absolute_error";
        case Criterion::poisson: return "poisson";
    }
    return "squared_error";
}

double DecisionTree::predict(std::span<const double> x) const {
    std::size_t i = 0;
    while (!nodes[i].is_leaf()) {
        const auto& n = nodes[i];
        i = static_cast<std::size_t>(x[static_cast<std::size_t>(n.feature)] <= n.threshold ? n.left : n.right);
    }
    return nodes[i].value;
}

std::size_t DecisionTree::leaf_count() const {
    return static_cast<std::size_t>(std::count_if(nodes.begin(), nodes.end(), [](const TreeNode& n) { return n.is_leaf(); }));
}

std::size_t DecisionTree::depth() const {
    if (nodes.empty()) return 0;
    std::size_t deepest = 0;
    std::vector<std::pair<std::size_t, std::size_t>> stack{{0, 0}};
    while (!stack.empty()) {
        const auto [i, d] = stack.back();
        stack.pop_back();
        deepest = std::max(deepest, d);
        if (!nodes[i].is_leaf()) {
            stack.push_back({static_cast<std::size_t>(nodes[i].left), d + 1});
            stack.push_back({static_cast<std::size_t>(nodes[i].right), d + 1});
        }
    }
    return deepest;
}

std::uint16_t FeatureBins::code(std::size_t feature, double x) const {
    const auto& e = edges[feature];
    return static_cast<std::uint16_t>(std::lower_bound(e.begin(), e.end(), x) - e.begin());
}

FeatureBins make_bins(const Matrix& X, std::size_t n_bins) {
    if (n_bins < 2) throw InvalidArgument("n_bins must be at least 2");
    if (n_bins > 65535) throw InvalidArgument("n_bins must be below 65536");
    FeatureBins bins;
    const auto n = static_cast<std::size_t>(X.rows());
    for (Eigen::Index f = 0; f < X.cols(); ++f) {
        std::vector<double> col;
        col.reserve(n);
        for (Eigen::Index r = 0; r < X.rows(); ++r) col.push_back(X(r, f));
        std::sort(col.begin(), col.end());
        std::vector<double> distinct = col;
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

        std::vector<double> edges;
        if (distinct.size() <= n_bins) {
            for (std::size_t i = 1; i < distinct.size(); ++i) edges.push_back(midpoint(distinct[i - 1], distinct[i]));
        } else {
            for (std::size_t k = 1; k < n_bins; ++k) {
                const double pos = static_cast<double>(k) / static_cast<double>(n_bins) * static_cast<double>(n - 1);
                const auto lo = static_cast<std::size_t>(std::floor(pos));
                const auto hi = std::min(lo + 1, n - 1);
                edges.push_back(col[lo] + (pos - static_cast<double>(lo)) * (col[hi] - col[lo]));
            }
            edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
        }
        bins.edges.push_back(std::move(edges));
    }
    bins.codes.resize(static_cast<std::size_t>(X.cols()));
    for (std::size_t f = 0; f < bins.edges.size(); ++f) {
        bins.codes[f].resize(n);
        for (std::size_t r = 0; r < n; ++r)
            bins.codes[f][r] = bins.code(f, X(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(f)));
    }
    return bins;
}

DecisionTree grow_tree(const Matrix& X, const Vector& target, std::span<const std::size_t> rows,
                       const GrowOptions& options, Rng* rng) {
    if (target.size() != X.rows()) throw InvalidArgument("grow_tree: X and target differ in length");
    Grower g(X, target, options, rng);
    return g.run(rows);
}

DecisionTree fit_cart(const Matrix& X, const Vector& y, int max_depth, std::size_t min_samples_leaf,
                      Criterion criterion) {
    if (max_depth < 1) throw InvalidArgument("fit_cart: max_depth must be >= 1");
    if (min_samples_leaf < 1) throw InvalidArgument("fit_cart: min_samples_leaf must be >= 1");
    if (criterion == Criterion::poisson && (y.array() <= 0.0).any())
        throw InvalidArgument("fit_cart: the poisson criterion requires a strictly positive target");
    std::vector<std::size_t> rows(static_cast<std::size_t>(X.rows()));
    std::iota(rows.begin(), rows.end(), 0);
    GrowOptions o;
    o.max_depth = max_depth;
    o.min_samples_leaf = min_samples_leaf;
    o.criterion = criterion;
    return grow_tree(X, y, rows, o);
}

DecisionTree grow_oblivious_tree(const Matrix& X, const Vector& target, int depth, double l2_leaf,
                                 const FeatureBins& bins) {
    if (depth < 1) throw InvalidArgument("oblivious tree depth must be >= 1");
    const auto n = static_cast<std::size_t>(X.rows());
    const auto d = static_cast<std::size_t>(X.cols());
    std::vector<std::size_t> leaf(n, 0);
    std::vector<std::pair<int, double>> levels;
    std::vector<std::uint16_t> level_bins;

    for (int level = 0; level < depth; ++level) {
        const std::size_t n_leaves = std::size_t{1} << level;
        double best_gain = 0.0;
        int best_f = -1;
        std::size_t best_b = 0;
        for (std::size_t f = 0; f < d; ++f) {
            const std::size_t n_bins = bins.edges[f].size() + 1;
            if (n_bins < 2) continue;
            std::vector<double> cnt(n_leaves * n_bins, 0.0), sum(n_leaves * n_bins, 0.0);
            std::vector<double> leaf_cnt(n_leaves, 0.0), leaf_sum(n_leaves, 0.0);
            for (std::size_t r = 0; r < n; ++r) {
                const double v = target(static_cast<Eigen::Index>(r));
                const auto slot = leaf[r] * n_bins + bins.codes[f][r];
                cnt[slot] += 1.0;
                sum[slot] += v;
                leaf_cnt[leaf[r]] += 1.0;
                leaf_sum[leaf[r]] += v;
            }
            std::vector<double> run_cnt(n_leaves, 0.0), run_sum(n_leaves, 0.0);
            for (std::size_t b = 0; b + 1 < n_bins; ++b) {
                double gain = 0.0;
                for (std::size_t l = 0; l < n_leaves; ++l) {
                    run_cnt[l] += cnt[l * n_bins + b];
                    run_sum[l] += sum[l * n_bins + b];
                    gain += newton_gain(run_cnt[l], run_sum[l], leaf_cnt[l] - run_cnt[l], leaf_sum[l] - run_sum[l],
                                        l2_leaf);
                }
                if (gain > best_gain) {
                    best_gain = gain;
                    best_f = static_cast<int>(f);
                    best_b = b;
                }
            }
        }
        if (best_f < 0) break;
        const auto f = static_cast<std::size_t>(best_f);
        levels.emplace_back(best_f, bins.edges[f][best_b]);
        for (std::size_t r = 0; r < n; ++r) leaf[r] = 2 * leaf[r] + (bins.codes[f][r] > best_b ? 1 : 0);
    }

    const std::size_t n_leaves = std::size_t{1} << levels.size();
    std::vector<double> cnt(n_leaves, 0.0), sum(n_leaves, 0.0);
    for (std::size_t r = 0; r < n; ++r) {
        cnt[leaf[r]] += 1.0;
        sum[leaf[r]] += target(static_cast<Eigen::Index>(r));
    }

    // Expand into an explicit complete binary tree, leaves in left-to-right order.
    DecisionTree tree;
    tree.n_features = d;
    auto expand = [&](auto&& self, std::size_t level, std::size_t path) -> int {
        const int id = static_cast<int>(tree.nodes.size());
        tree.nodes.emplace_back();
        if (level == levels.size()) {
            auto& node = tree.nodes.back();
            node.value = cnt[path] + l2_leaf > 0.0 ? sum[path] / (cnt[path] + l2_leaf) : 0.0;
            return id;
        }
        const int left = self(self, level + 1, 2 * path);
        const int right = self(self, level + 1, 2 * path + 1);
        auto& node = tree.nodes[static_cast<std::size_t>(id)];
        node.feature = levels[level].first;
        node.threshold = levels[level].second;
        node.left = left;
        node.right = right;
        return id;
    };
    expand(expand, 0, 0);

    std::vector<std::size_t> rows(n);
    std::iota(rows.begin(), rows.end(), 0);
    annotate_node_stats(tree, X, target, rows);
    return tree;
}

void annotate_node_stats(DecisionTree& tree, const Matrix& X, const Vector& target,
                         std::span<const std::size_t> rows) {
    const auto m = tree.nodes.size();
    std::vector<double> cnt(m, 0.0), sum(m, 0.0), sq(m, 0.0);
    std::vector<std::vector<double>> values(m);
    for (std::size_t r : rows) {
        const auto x = row_span(X, static_cast<Eigen::Index>(r));
        const double v = target(static_cast<Eigen::Index>(r));
        std::size_t i = 0;
        while (true) {
            values[i].push_back(v);
            const auto& node = tree.nodes[i];
            if (node.is_leaf()) break;
            i = static_cast<std::size_t>(x[static_cast<std::size_t>(node.feature)] <= node.threshold ? node.left
                                                                                                      : node.right);
        }
    }
    for (std::size_t i = 0; i < m; ++i) {
        auto& node = tree.nodes[i];
        node.n_samples = values[i].size();
        double s = 0.0;
        for (double v : values[i]) s += v;
        const double mean = values[i].empty() ? 0.0 : s / static_cast<double>(values[i].size());
        double sse = 0.0;
        for (double v : values[i]) sse += (v - mean) * (v - mean);
        node.sum_squared_residual = sse;
    }
}

}  // namespace trm::models
