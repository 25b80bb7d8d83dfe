#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "trm/common/types.hpp"

namespace trm::models {

enum class Activation { sigmoid, relu, tanh, identity };

Activation activation_from_string(const std::string& s);
const char* to_string(Activation a);

/// Fully connected layer: z = W·a_prev + b, W is (out × in).
struct DenseLayer {
    Eigen::MatrixXd W;
    Vector b;
};

/// Hidden layers use `activation`, the output layer is linear. The network is trained
/// on (y − y_mean)/y_scale; predict() maps back to target units.
struct MlpModel {
    std::vector<DenseLayer> layers;
    Activation activation = Activation::relu;
    double y_mean = 0.0;
    double y_scale = 1.0;
    std::vector<double> loss_history;  ///< training cost after each epoch

    std::vector<int> layer_sizes() const;
    double predict(std::span<const double> x) const;
};

struct ForwardCache {
    std::vector<Vector> z;  ///< pre-activations, one per layer
    std::vector<Vector> a;  ///< a[0] = input, a[l+1] = activation of layer l
    double output = 0.0;
};

/// Glorot-uniform weights in ±sqrt(6/(fan_in+fan_out)), zero biases.
MlpModel init_mlp(const std::vector<int>& layer_sizes, Activation activation, std::uint64_t seed);

/// Raw network output (network scale, no target de-standardization).
ForwardCache mlp_forward(const MlpModel& model, std::span<const double> x);

/// J = (1/m)·Σ(ŷ − y)² + λ·Σ_l ||W_l||²_F over a batch, in network scale.
double mlp_cost(const MlpModel& model, const Matrix& X, const Vector& y, double lambda);

struct MlpGradient {
    std::vector<Eigen::MatrixXd> dW;
    std::vector<Vector> db;
    double cost = 0.0;
};

MlpGradient mlp_gradient(const MlpModel& model, const Matrix& X, const Vector& y, double lambda);

/// One gradient-descent step W ← W − α·∂J/∂W, b ← b − α·∂J/∂b; returns the pre-step cost.
double mlp_backprop_step(MlpModel& model, const Matrix& X, const Vector& y, double learning_rate, double lambda);

struct MlpOptions {
    std::vector<int> hidden = {50};
    Activation activation = Activation::relu;
    double lambda = 0.0;
    double learning_rate = 0.01;
    int batch_size = 32;
    int epochs = 300;
    std::uint64_t seed = 0;
};

/// Mini-batch gradient descent over a freshly shuffled order every epoch.
MlpModel fit_mlp(const Matrix& X, const Vector& y, const MlpOptions& options);

}  // namespace trm::models
