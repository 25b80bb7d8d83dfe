#include "trm/models/mlp.hpp"

#include <algorithm>
#include <cmath>

#include "trm/common/error.hpp"
#include "trm/common/random.hpp"

namespace trm::models {

Activation activation_from_string(const std::string& s) {
    if (s == "sigmoid" || s == "logistic") return Activation::sigmoid;
    if (s == "relu") return Activation::relu;
    if (s == "tanh") return Activation::tanh;
    if (s == "identity") return Activation::identity;
    throw InvalidArgument("unknown activation '" + s + "'");
}

const char* to_string(Activation a) {
    switch (a) {
        case Activation::sigmoid: return "sigmoid";
        case Activation::relu: return "relu";
        case Activation::tanh: return "tanh";
        case Activation::identity: return "identity";
    }
    return "identity";
}

namespace {

double activate(Activation a, double z) {
    switch (a) {
        case Activation::sigmoid: return 1.0 / (1.0 + std::exp(-z));
        case Activation::relu: return z > 0.0 ? z : 0.0;
        case Activation::tanh: return std::tanh(z);
        case Activation::identity: return z;
    }
    return z;
}

// Derivative expressed through z and a = σ(z).
double activate_grad(Activation act, double z, double a) {
    switch (act) {
        case Activation::sigmoid: return a * (1.0 - a);
        case Activation::relu: return z > 0.0 ? 1.0 : 0.0;
        case Activation::tanh: return 1.0 - a * a;
        case Activation::identity: return 1.0;
    }
    return 1.0;
}

}  // namespace

std::vector<int> MlpModel::layer_sizes() const {
    std::vector<int> sizes;
    if (layers.empty()) return sizes;
    sizes.push_back(static_cast<int>(layers.front().W.cols()));
    for (const auto& l : layers) sizes.push_back(static_cast<int>(l.W.rows()));
    return sizes;
}

MlpModel init_mlp(const std::vector<int>& sizes, Activation activation, std::uint64_t seed) {
    if (sizes.size() < 2) throw InvalidArgument("mlp: need at least input and output layer sizes");
    if (sizes.back() != 1) throw InvalidArgument("mlp: output layer must have one unit");
    for (int s : sizes)
        if (s < 1) throw InvalidArgument("mlp: layer sizes must be >= 1");
    Rng rng(seed);
    MlpModel model;
    model.activation = activation;
    for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
        const int in = sizes[l], out = sizes[l + 1];
        const double bound = std::sqrt(6.0 / static_cast<double>(in + out));
        DenseLayer layer{Eigen::MatrixXd(out, in), Vector::Zero(out)};
        for (int i = 0; i < out; ++i)
            for (int j = 0; j < in; ++j) layer.W(i, j) = rng.uniform(-bound, bound);
        model.layers.push_back(std::move(layer));
    }
    return model;
}

ForwardCache mlp_forward(const MlpModel& model, std::span<const double> x) {
    if (model.layers.empty()) throw InvalidArgument("mlp: model has no layers");
    if (static_cast<Eigen::Index>(x.size()) != model.layers.front().W.cols())
        throw InvalidArgument("mlp: input width " + std::to_string(x.size()) + " does not match the input layer");
    ForwardCache c;
    c.a.push_back(Eigen::Map<const Vector>(x.data(), static_cast<Eigen::Index>(x.size())));
    for (std::size_t l = 0; l < model.layers.size(); ++l) {
        Vector z = model.layers[l].W * c.a.back() + model.layers[l].b;
        const bool output = l + 1 == model.layers.size();
        Vector a = output ? z : z.unaryExpr([&](double v) { return activate(model.activation, v); }).eval();
        c.z.push_back(std::move(z));
        c.a.push_back(std::move(a));
    }
    c.output = c.a.back()(0);
    return c;
}

double MlpModel::predict(std::span<const double> x) const { return y_mean + y_scale * mlp_forward(*this, x).output; }

namespace {

double penalty(const MlpModel& model) {
    double s = 0.0;
    for (const auto& l : model.layers) s += l.W.squaredNorm();
    return s;
}

}  // namespace

namespace {

struct BatchForward {
    std::vector<Eigen::MatrixXd> z;  // (units × m)
    std::vector<Eigen::MatrixXd> a;
};

BatchForward forward_batch(const MlpModel& model, const Matrix& X) {
    if (model.layers.empty()) throw InvalidArgument("mlp: model has no layers");
    if (X.cols() != model.layers.front().W.cols()) throw InvalidArgument("mlp: input width does not match the input layer");
    BatchForward f;
    f.a.push_back(X.transpose());
    for (std::size_t l = 0; l < model.layers.size(); ++l) {
        Eigen::MatrixXd z = model.layers[l].W * f.a.back();
        z.colwise() += model.layers[l].b;
        const bool output = l + 1 == model.layers.size();
        Eigen::MatrixXd a = output ? z : z.unaryExpr([&](double v) { return activate(model.activation, v); }).eval();
        f.z.push_back(std::move(z));
        f.a.push_back(std::move(a));
    }
    return f;
}

}  // namespace

double mlp_cost(const MlpModel& model, const Matrix& X, const Vector& y, double lambda) {
    if (X.rows() == 0) throw InvalidArgument("mlp: empty batch");
    const BatchForward f = forward_batch(model, X);
    const double sse = (f.a.back().row(0).transpose() - y).squaredNorm();
    return sse / static_cast<double>(X.rows()) + lambda * penalty(model);
}

MlpGradient mlp_gradient(const MlpModel& model, const Matrix& X, const Vector& y, double lambda) {
    if (X.rows() == 0) throw InvalidArgument("mlp: empty batch");
    if (y.size() != X.rows()) throw InvalidArgument("mlp: X and y differ in length");
    const auto L = model.layers.size();
    const double m = static_cast<double>(X.rows());
    const BatchForward f = forward_batch(model, X);
    const Eigen::RowVectorXd e = f.a.back().row(0) - y.transpose();

    MlpGradient g;
    g.dW.resize(L);
    g.db.resize(L);
    Eigen::MatrixXd delta = (2.0 / m) * e;
    for (std::size_t l = L; l-- > 0;) {
        g.dW[l] = delta * f.a[l].transpose() + 2.0 * lambda * model.layers[l].W;
        g.db[l] = delta.rowwise().sum();
        if (!g.dW[l].allFinite() || !g.db[l].allFinite())
            throw NumericalError("mlp: non-finite gradient in layer " + std::to_string(l));
        if (l == 0) break;
        Eigen::MatrixXd back = model.layers[l].W.transpose() * delta;
        const auto& z = f.z[l - 1];
        const auto& a = f.a[l];
        for (Eigen::Index j = 0; j < back.cols(); ++j)
            for (Eigen::Index i = 0; i < back.rows(); ++i) back(i, j) *= activate_grad(model.activation, z(i, j), a(i, j));
        delta = std::move(back);
    }
    g.cost = e.squaredNorm() / m + lambda * penalty(model);
    return g;
}

double mlp_backprop_step(MlpModel& model, const Matrix& X, const Vector& y, double learning_rate, double lambda) {
    const MlpGradient g = mlp_gradient(model, X, y, lambda);
    for (std::size_t l = 0; l < model.layers.size(); ++l) {
        model.layers[l].W -= learning_rate * g.dW[l];
        model.layers[l].b -= learning_rate * g.db[l];
    }
    return g.cost;
}

MlpModel fit_mlp(const Matrix& X, const Vector& y, const MlpOptions& o) {
    if (X.rows() == 0) throw InvalidArgument("mlp: no training rows");
    if (y.size() != X.rows()) throw InvalidArgument("mlp: X and y differ in length");
    if (o.hidden.empty()) throw InvalidArgument("mlp: at least one hidden layer is required");
    for (int h : o.hidden)
        if (h < 1) throw InvalidArgument("mlp: hidden_neurons must be >= 1");
    if (!(o.learning_rate > 0.0)) throw InvalidArgument("mlp: learning_rate must be > 0");
    if (o.batch_size < 1 || o.epochs < 1) throw InvalidArgument("mlp: batch_size and epochs must be >= 1");
    if (o.lambda < 0.0) throw InvalidArgument("mlp: lambda must be >= 0");

    std::vector<int> sizes{static_cast<int>(X.cols())};
    sizes.insert(sizes.end(), o.hidden.begin(), o.hidden.end());
    sizes.push_back(1);
    MlpModel model = init_mlp(sizes, o.activation, derive_seed(o.seed, 0));
    model.y_mean = y.mean();
    const double sd = std::sqrt((y.array() - model.y_mean).square().mean());
    model.y_scale = sd > 0.0 ? sd : 1.0;
    const Vector t = (y.array() - model.y_mean) / model.y_scale;

    Rng rng(derive_seed(o.seed, 1));
    const auto n = static_cast<std::size_t>(X.rows());
    const auto bs = std::min<std::size_t>(static_cast<std::size_t>(o.batch_size), n);
    Matrix Xb;
    Vector yb;
    for (int epoch = 0; epoch < o.epochs; ++epoch) {
        const auto order = rng.permutation(n);
        for (std::size_t start = 0; start < n; start += bs) {
            const auto len = std::min(bs, n - start);
            Xb.resize(static_cast<Eigen::Index>(len), X.cols());
            yb.resize(static_cast<Eigen::Index>(len));
            for (std::size_t k = 0; k < len; ++k) {
                const auto r = static_cast<Eigen::Index>(order[start + k]);
                Xb.row(static_cast<Eigen::Index>(k)) = X.row(r);
                yb(static_cast<Eigen::Index>(k)) = t(r);
            }
            try {
                mlp_backprop_step(model, Xb, yb, o.learning_rate, o.lambda);
            } catch (const NumericalError& e) {
                throw NumericalError("mlp: training diverged in epoch " + std::to_string(epoch) + " (" + e.what() + ")");
            }
        }
        const double cost = mlp_cost(model, X, t, o.lambda);
        if (!std::isfinite(cost)) throw NumericalError("mlp: training loss became non-finite in epoch " + std::to_string(epoch));
        model.loss_history.push_back(cost);
    }
    return model;
}

}  // namespace trm::models
