#include "ecofollow/mlp.hpp"

#include <cmath>

#include "ecofollow/error.hpp"

namespace ecofollow {
namespace {

void apply_activation(Activation act, Eigen::MatrixXd& z) {
  if (act == Activation::kTanh) z = z.array().tanh();
}

}  // namespace

void MlpGradients::set_zero() {
  for (auto& w : weights) w.setZero();
  for (auto& b : bias) b.setZero();
}

std::vector<double> MlpGradients::flatten() const {
  std::vector<double> flat;
  for (std::size_t l = 0; l < weights.size(); ++l) {
    const auto& w = weights[l];
    for (Eigen::Index r = 0; r < w.rows(); ++r) {
      for (Eigen::Index c = 0; c < w.cols(); ++c) flat.push_back(w(r, c));
    }
    for (Eigen::Index r = 0; r < bias[l].size(); ++r) flat.push_back(bias[l](r));
  }
  return flat;
}

bool MlpGradients::all_finite() const {
  for (const auto& w : weights) {
    if (!w.allFinite()) return false;
  }
  for (const auto& b : bias) {
    if (!b.allFinite()) return false;
  }
  return true;
}

Mlp::Mlp(const std::vector<std::size_t>& sizes,
         const std::vector<Activation>& activations) {
  if (sizes.size() < 2 || activations.size() + 1 != sizes.size()) {
    throw ConfigError("MLP needs n+1 layer sizes for n activations (n >= 1)");
  }
  for (std::size_t l = 0; l < activations.size(); ++l) {
    if (sizes[l] == 0 || sizes[l + 1] == 0) throw ConfigError("MLP layer of size 0");
    DenseLayer layer;
    layer.weights = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(sizes[l + 1]),
                                          static_cast<Eigen::Index>(sizes[l]));
    layer.bias = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(sizes[l + 1]));
    layer.activation = activations[l];
    layers_.push_back(std::move(layer));
  }
}

Mlp Mlp::random(const std::vector<std::size_t>& sizes,
                const std::vector<Activation>& activations, SplitMix64& rng,
                double final_range) {
  Mlp net(sizes, activations);
  for (std::size_t l = 0; l < net.layers_.size(); ++l) {
    auto& layer = net.layers_[l];
    const bool last = l + 1 == net.layers_.size();
    const double range =
        last ? final_range : 1.0 / std::sqrt(static_cast<double>(layer.weights.cols()));
    for (Eigen::Index r = 0; r < layer.weights.rows(); ++r) {
      for (Eigen::Index c = 0; c < layer.weights.cols(); ++c) {
        layer.weights(r, c) = rng.uniform(-range, range);
      }
    }
    for (Eigen::Index r = 0; r < layer.bias.size(); ++r) {
      layer.bias(r) = rng.uniform(-range, range);
    }
  }
  return net;
}

std::size_t Mlp::input_size() const {
  return layers_.empty() ? 0 : static_cast<std::size_t>(layers_.front().weights.cols());
}

std::size_t Mlp::output_size() const {
  return layers_.empty() ? 0 : static_cast<std::size_t>(layers_.back().weights.rows());
}

std::vector<std::size_t> Mlp::sizes() const {
  std::vector<std::size_t> s;
  if (layers_.empty()) return s;
  s.push_back(input_size());
  for (const auto& layer : layers_) s.push_back(static_cast<std::size_t>(layer.weights.rows()));
  return s;
}

Eigen::MatrixXd Mlp::forward(const Eigen::MatrixXd& x) const {
  if (static_cast<std::size_t>(x.rows()) != input_size()) {
    throw ConfigError("MLP input has " + std::to_string(x.rows()) + " rows, expected " +
                      std::to_string(input_size()));
  }
  Eigen::MatrixXd a = x;
  for (const auto& layer : layers_) {
    Eigen::MatrixXd z = layer.weights * a;
    z.colwise() += layer.bias;
    apply_activation(layer.activation, z);
    a = std::move(z);
  }
  return a;
}

Eigen::MatrixXd Mlp::forward(const Eigen::MatrixXd& x, Tape& tape) const {
  if (static_cast<std::size_t>(x.rows()) != input_size()) {
    throw ConfigError("MLP input has " + std::to_string(x.rows()) + " rows, expected " +
                      std::to_string(input_size()));
  }
  tape.inputs.resize(layers_.size());
  tape.outputs.resize(layers_.size());
  const Eigen::MatrixXd* a = &x;
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    const auto& layer = layers_[l];
    tape.inputs[l] = *a;
    Eigen::MatrixXd z = layer.weights * *a;
    z.colwise() += layer.bias;
    apply_activation(layer.activation, z);
    tape.outputs[l] = std::move(z);
    a = &tape.outputs[l];
  }
  return *a;
}

Eigen::MatrixXd Mlp::backward(const Tape& tape, const Eigen::MatrixXd& grad_output,
                              MlpGradients& grads) const {
  Eigen::MatrixXd delta = grad_output;
  for (std::size_t l = layers_.size(); l-- > 0;) {
    const auto& layer = layers_[l];
    if (layer.activation == Activation::kTanh) {
      delta.array() *= 1.0 - tape.outputs[l].array().square();
    }
    grads.weights[l].noalias() += delta * tape.inputs[l].transpose();
    grads.bias[l] += delta.rowwise().sum();
    delta = layer.weights.transpose() * delta;
  }
  return delta;
}

MlpGradients Mlp::zero_gradients() const {
  MlpGradients g;
  for (const auto& layer : layers_) {
    g.weights.push_back(Eigen::MatrixXd::Zero(layer.weights.rows(), layer.weights.cols()));
    g.bias.push_back(Eigen::VectorXd::Zero(layer.bias.size()));
  }
  return g;
}

std::size_t Mlp::parameter_count() const {
  std::size_t n = 0;
  for (const auto& layer : layers_) {
    n += static_cast<std::size_t>(layer.weights.size() + layer.bias.size());
  }
  return n;
}

double& Mlp::parameter(std::size_t index) {
  for (auto& layer : layers_) {
    const auto nw = static_cast<std::size_t>(layer.weights.size());
    if (index < nw) {
      const auto cols = static_cast<std::size_t>(layer.weights.cols());
      return layer.weights(static_cast<Eigen::Index>(index / cols),
                           static_cast<Eigen::Index>(index % cols));
    }
    index -= nw;
    const auto nb = static_cast<std::size_t>(layer.bias.size());
    if (index < nb) return layer.bias(static_cast<Eigen::Index>(index));
    index -= nb;
  }
  throw ArgumentError("MLP parameter index out of range");
}

double Mlp::parameter(std::size_t index) const {
  return const_cast<Mlp*>(this)->parameter(index);
}

bool Mlp::all_finite() const {
  for (const auto& layer : layers_) {
    if (!layer.weights.allFinite() || !layer.bias.allFinite()) return false;
  }
  return true;
}

void soft_update(Mlp& target, const Mlp& online, double tau) {
  if (target.sizes() != online.sizes()) {
    throw ConfigError("soft update between networks of different shapes");
  }
  auto& t = target.layers();
  const auto& o = online.layers();
  for (std::size_t l = 0; l < t.size(); ++l) {
    t[l].weights = tau * o[l].weights + (1.0 - tau) * t[l].weights;
    t[l].bias = tau * o[l].bias + (1.0 - tau) * t[l].bias;
  }
}

AdamOptimizer::AdamOptimizer(const Mlp& net, double learning_rate, double beta1,
                             double beta2, double eps)
    : lr_(learning_rate),
      beta1_(beta1),
      beta2_(beta2),
      eps_(eps),
      m_(net.zero_gradients()),
      v_(net.zero_gradients()) {}

void AdamOptimizer::step(Mlp& net, const MlpGradients& grads) {
  ++t_;
  const double c1 = 1.0 - std::pow(beta1_, static_cast<double>(t_));
  const double c2 = 1.0 - std::pow(beta2_, static_cast<double>(t_));
  auto& layers = net.layers();
  for (std::size_t l = 0; l < layers.size(); ++l) {
    m_.weights[l] = beta1_ * m_.weights[l] + (1.0 - beta1_) * grads.weights[l];
    v_.weights[l] =
        beta2_ * v_.weights[l] + (1.0 - beta2_) * grads.weights[l].cwiseProduct(grads.weights[l]);
    layers[l].weights.array() -=
        lr_ * (m_.weights[l].array() / c1) / ((v_.weights[l].array() / c2).sqrt() + eps_);

    m_.bias[l] = beta1_ * m_.bias[l] + (1.0 - beta1_) * grads.bias[l];
    v_.bias[l] = beta2_ * v_.bias[l] + (1.0 - beta2_) * grads.bias[l].cwiseProduct(grads.bias[l]);
    layers[l].bias.array() -=
        lr_ * (m_.bias[l].array() / c1) / ((v_.bias[l].array() / c2).sqrt() + eps_);
  }
}

}  // namespace ecofollow
