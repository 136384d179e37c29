#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "ecofollow/rng.hpp"

namespace ecofollow {

enum class Activation { kIdentity, kTanh };

struct DenseLayer {
  Eigen::MatrixXd weights;  // out x in
  Eigen::VectorXd bias;  // out
  Activation activation = Activation::kIdentity;
};

struct MlpGradients {
  std::vector<Eigen::MatrixXd> weights;
  std::vector<Eigen::VectorXd> bias;

  void set_zero();
  // Concatenation in parameter order (layer by layer, weights row-major then bias).
  std::vector<double> flatten() const;
  bool all_finite() const;
};

// Fully connected feed-forward network. Batched calls take one sample per
// column.
class Mlp {
 public:
  // Activations recorded by forward(); consumed by backward().
  struct Tape {
    std::vector<Eigen::MatrixXd> inputs;  // input to each layer
    std::vector<Eigen::MatrixXd> outputs;  // post-activation output of each layer
  };

  Mlp() = default;
  // Zero-initialized network; `sizes` has one more entry than `activations`.
  Mlp(const std::vector<std::size_t>& sizes, const std::vector<Activation>& activations);

  // Fan-in uniform init for hidden layers, U(-final_range, final_range) for the
  // output layer.
  static Mlp random(const std::vector<std::size_t>& sizes,
                    const std::vector<Activation>& activations, SplitMix64& rng,
                    double final_range = 3e-3);

  std::size_t input_size() const;
  std::size_t output_size() const;
  std::vector<std::size_t> sizes() const;
  const std::vector<DenseLayer>& layers() const { return layers_; }
  std::vector<DenseLayer>& layers() { return layers_; }

  Eigen::MatrixXd forward(const Eigen::MatrixXd& x) const;
  Eigen::MatrixXd forward(const Eigen::MatrixXd& x, Tape& tape) const;

  // Accumulates dL/dparams into `grads` given dL/d(output) and returns dL/d(input).
  Eigen::MatrixXd backward(const Tape& tape, const Eigen::MatrixXd& grad_output,
                           MlpGradients& grads) const;

  MlpGradients zero_gradients() const;

  std::size_t parameter_count() const;
  // Flat parameter view, same order as MlpGradients::flatten().
  double& parameter(std::size_t index);
  double parameter(std::size_t index) const;

  bool all_finite() const;

 private:
  std::vector<DenseLayer> layers_;
};

// target <- tau * online + (1 - tau) * target, element-wise.
void soft_update(Mlp& target, const Mlp& online, double tau);

// Per-parameter adaptive-moment optimizer (beta1, beta2, eps as usual).
class AdamOptimizer {
 public:
  AdamOptimizer() = default;
  AdamOptimizer(const Mlp& net, double learning_rate, double beta1 = 0.9,
                double beta2 = 0.999, double eps = 1e-8);

  // Gradient descent step on a loss whose gradient is `grads`.
  void step(Mlp& net, const MlpGradients& grads);

 private:
  double lr_ = 1e-3;
  double beta1_ = 0.9;
  double beta2_ = 0.999;
  double eps_ = 1e-8;
  long t_ = 0;
  MlpGradients m_;
  MlpGradients v_;
};

}  // namespace ecofollow
