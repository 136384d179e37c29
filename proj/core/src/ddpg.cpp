#include "ecofollow/ddpg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "ecofollow/error.hpp"

namespace ecofollow {

ReplayBuffer::ReplayBuffer(std::size_t capacity) : capacity_(capacity) {
  if (capacity == 0) throw ArgumentError("replay buffer capacity must be positive");
  data_.reserve(std::min<std::size_t>(capacity, 1 << 16));
}

void ReplayBuffer::push(const Transition& t) {
  if (data_.size() < capacity_) {
    data_.push_back(t);
    return;
  }
  data_[head_] = t;
  head_ = (head_ + 1) % capacity_;
}

const Transition& ReplayBuffer::operator[](std::size_t i) const {
  if (i >= data_.size()) throw ArgumentError("replay buffer index out of range");
  return data_[(head_ + i) % data_.size()];
}

std::vector<std::size_t> ReplayBuffer::sample_indices(std::size_t count,
                                                      SplitMix64& rng) const {
  const std::size_t n = data_.size();
  if (count > n) {
    throw ArgumentError("cannot sample " + std::to_string(count) + " of " +
                        std::to_string(n) + " transitions");
  }
  std::vector<std::size_t> chosen;
  chosen.reserve(count);
  for (std::size_t j = n - count; j < n; ++j) {
    const auto t = static_cast<std::size_t>(rng.below(j + 1));
    if (std::find(chosen.begin(), chosen.end(), t) == chosen.end()) {
      chosen.push_back(t);
    } else {
      chosen.push_back(j);
    }
  }
  return chosen;
}

std::vector<Transition> ReplayBuffer::sample(std::size_t count, SplitMix64& rng) const {
  std::vector<Transition> out;
  out.reserve(count);
  for (auto i : sample_indices(count, rng)) out.push_back((*this)[i]);
  return out;
}

Batch Batch::from(const std::vector<Transition>& transitions) {
  const auto b = static_cast<Eigen::Index>(transitions.size());
  Batch batch;
  batch.states.resize(3, b);
  batch.actions.resize(1, b);
  batch.rewards.resize(b);
  batch.next_states.resize(3, b);
  batch.not_done.resize(b);
  for (Eigen::Index i = 0; i < b; ++i) {
    const auto& t = transitions[static_cast<std::size_t>(i)];
    for (Eigen::Index r = 0; r < 3; ++r) {
      batch.states(r, i) = t.state[static_cast<std::size_t>(r)];
      batch.next_states(r, i) = t.next_state[static_cast<std::size_t>(r)];
    }
    batch.actions(0, i) = t.action;
    batch.rewards(i) = t.reward;
    batch.not_done(i) = t.done ? 0.0 : 1.0;
  }
  return batch;
}

namespace {

std::vector<std::size_t> layer_sizes(std::size_t in, const std::vector<std::size_t>& hidden) {
  std::vector<std::size_t> sizes{in};
  sizes.insert(sizes.end(), hidden.begin(), hidden.end());
  sizes.push_back(1);
  return sizes;
}

Eigen::MatrixXd state_action(const Eigen::MatrixXd& states, const Eigen::MatrixXd& actions) {
  Eigen::MatrixXd x(states.rows() + 1, states.cols());
  x.topRows(states.rows()) = states;
  x.bottomRows(1) = actions;
  return x;
}

}  // namespace

Mlp make_actor(const std::vector<std::size_t>& hidden, SplitMix64& rng) {
  std::vector<Activation> acts(hidden.size(), Activation::kTanh);
  acts.push_back(Activation::kTanh);
  return Mlp::random(layer_sizes(3, hidden), acts, rng);
}

Mlp make_critic(const std::vector<std::size_t>& hidden, SplitMix64& rng) {
  std::vector<Activation> acts(hidden.size(), Activation::kTanh);
  acts.push_back(Activation::kIdentity);
  return Mlp::random(layer_sizes(4, hidden), acts, rng);
}

double actor_forward(const Mlp& actor, const NormState& state) {
  if (actor.input_size() != 3 || actor.output_size() != 1) {
    throw ConfigError("actor must map 3 inputs to 1 output");
  }
  const Eigen::Vector3d x(state[0], state[1], state[2]);
  return actor.forward(x)(0, 0);
}

double critic_forward(const Mlp& critic, const NormState& state, double action) {
  if (critic.input_size() != 4 || critic.output_size() != 1) {
    throw ConfigError("critic must map 4 inputs to 1 output");
  }
  const Eigen::Vector4d x(state[0], state[1], state[2], action);
  return critic.forward(x)(0, 0);
}

LossAndGradients critic_loss(const Mlp& critic, const Mlp& target_actor,
                             const Mlp& target_critic, const Batch& batch, double gamma) {
  const double b = static_cast<double>(batch.size());
  const Eigen::MatrixXd next_actions = target_actor.forward(batch.next_states);
  const Eigen::MatrixXd next_q =
      target_critic.forward(state_action(batch.next_states, next_actions));
  const Eigen::RowVectorXd target =
      batch.rewards.array() + gamma * batch.not_done.array() * next_q.row(0).array();

  Mlp::Tape tape;
  const Eigen::MatrixXd q = critic.forward(state_action(batch.states, batch.actions), tape);
  const Eigen::RowVectorXd err = q.row(0) - target;

  LossAndGradients out;
  out.loss = err.squaredNorm() / b;
  out.gradients = critic.zero_gradients();
  const Eigen::MatrixXd grad_q = (2.0 / b) * err;
  critic.backward(tape, grad_q, out.gradients);
  return out;
}

LossAndGradients actor_loss(const Mlp& actor, const Mlp& critic, const Batch& batch) {
  const double b = static_cast<double>(batch.size());
  Mlp::Tape actor_tape;
  const Eigen::MatrixXd mu = actor.forward(batch.states, actor_tape);
  Mlp::Tape critic_tape;
  const Eigen::MatrixXd q = critic.forward(state_action(batch.states, mu), critic_tape);

  LossAndGradients out;
  out.loss = -q.sum() / b;
  MlpGradients scratch = critic.zero_gradients();
  const Eigen::MatrixXd grad_q = Eigen::MatrixXd::Constant(1, batch.size(), -1.0 / b);
  const Eigen::MatrixXd grad_input = critic.backward(critic_tape, grad_q, scratch);
  out.gradients = actor.zero_gradients();
  actor.backward(actor_tape, grad_input.bottomRows(1), out.gradients);
  return out;
}

DdpgAgent::DdpgAgent(const DdpgHyperparams& params, std::uint64_t seed) : params_(params) {
  SplitMix64 actor_rng(derive_seed(seed, "actor-init"));
  SplitMix64 critic_rng(derive_seed(seed, "critic-init"));
  actor_ = make_actor(params.hidden, actor_rng);
  critic_ = make_critic(params.hidden, critic_rng);
  target_actor_ = actor_;
  target_critic_ = critic_;
  actor_opt_ = AdamOptimizer(actor_, params.actor_lr);
  critic_opt_ = AdamOptimizer(critic_, params.critic_lr);
}

UpdateLosses DdpgAgent::update(const Batch& batch) {
  const auto c = critic_loss(critic_, target_actor_, target_critic_, batch, params_.gamma);
  if (!std::isfinite(c.loss) || !c.gradients.all_finite()) {
    throw NumericError("non-finite critic loss or gradient");
  }
  critic_opt_.step(critic_, c.gradients);

  const auto a = actor_loss(actor_, critic_, batch);
  if (!std::isfinite(a.loss) || !a.gradients.all_finite()) {
    throw NumericError("non-finite actor objective or gradient");
  }
  actor_opt_.step(actor_, a.gradients);

  soft_update(target_critic_, critic_, params_.tau);
  soft_update(target_actor_, actor_, params_.tau);
  return {c.loss, -a.loss};
}

namespace {

const char* activation_name(Activation a) {
  return a == Activation::kTanh ? "tanh" : "identity";
}

Activation activation_from(const std::string& name) {
  if (name == "tanh") return Activation::kTanh;
  if (name == "identity") return Activation::kIdentity;
  throw LoadError("unknown activation '" + name + "'");
}

}  // namespace

std::string policy_to_json(const Policy& policy) {
  nlohmann::json j;
  j["format"] = "ecofollow-policy";
  j["version"] = kPolicyFormatVersion;
  j["action_scale"] = policy.action_scale;
  j["state_scale"] = {{"speed", policy.normalizer.speed},
                      {"spacing", policy.normalizer.spacing},
                      {"rel_speed", policy.normalizer.rel_speed}};
  nlohmann::json layers = nlohmann::json::array();
  for (const auto& layer : policy.actor.layers()) {
    std::vector<double> w;
    w.reserve(static_cast<std::size_t>(layer.weights.size()));
    for (Eigen::Index r = 0; r < layer.weights.rows(); ++r) {
      for (Eigen::Index c = 0; c < layer.weights.cols(); ++c) w.push_back(layer.weights(r, c));
    }
    std::vector<double> b(layer.bias.data(), layer.bias.data() + layer.bias.size());
    layers.push_back({{"in", layer.weights.cols()},
                      {"out", layer.weights.rows()},
                      {"activation", activation_name(layer.activation)},
                      {"weights", w},
                      {"bias", b}});
  }
  j["layers"] = layers;
  return j.dump(1);
}

void save_policy(const std::filesystem::path& path, const Policy& policy) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ArgumentError("cannot write policy file '" + path.string() + "'");
  out << policy_to_json(policy) << '\n';
}

Policy policy_from_json(const std::string& text,
                        const std::optional<std::vector<std::size_t>>& expected_sizes) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw LoadError(std::string("policy file is not valid JSON: ") + e.what());
  }

  Policy policy;
  std::vector<std::size_t> sizes;
  std::vector<Activation> acts;
  std::vector<std::vector<double>> weights;
  std::vector<std::vector<double>> biases;
  try {
    if (j.value("format", std::string{}) != "ecofollow-policy") {
      throw LoadError("not an ecofollow policy file");
    }
    if (!j.contains("version")) throw LoadError("policy file has no version field");
    const int version = j.at("version").get<int>();
    if (version != kPolicyFormatVersion) {
      throw LoadError("unsupported policy version " + std::to_string(version));
    }
    policy.action_scale = j.at("action_scale").get<double>();
    const auto& scale = j.at("state_scale");
    policy.normalizer.speed = scale.at("speed").get<double>();
    policy.normalizer.spacing = scale.at("spacing").get<double>();
    policy.normalizer.rel_speed = scale.at("rel_speed").get<double>();
    const auto& layers = j.at("layers");
    if (!layers.is_array() || layers.empty()) throw LoadError("policy has no layers");
    for (const auto& layer : layers) {
      const auto in = layer.at("in").get<std::size_t>();
      const auto out = layer.at("out").get<std::size_t>();
      if (sizes.empty()) {
        sizes.push_back(in);
      } else if (sizes.back() != in) {
        throw LoadError("policy layers do not chain");
      }
      sizes.push_back(out);
      acts.push_back(activation_from(layer.at("activation").get<std::string>()));
      weights.push_back(layer.at("weights").get<std::vector<double>>());
      biases.push_back(layer.at("bias").get<std::vector<double>>());
      if (weights.back().size() != in * out || biases.back().size() != out) {
        throw LoadError("policy layer arrays do not match declared shape");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw LoadError(std::string("malformed policy file: ") + e.what());
  }

  if (expected_sizes && *expected_sizes != sizes) {
    std::string got;
    for (auto s : sizes) got += (got.empty() ? "" : "-") + std::to_string(s);
    std::string want;
    for (auto s : *expected_sizes) want += (want.empty() ? "" : "-") + std::to_string(s);
    throw ConfigError("policy shape mismatch: file has " + got + ", expected " + want);
  }
  if (sizes.front() != 3 || sizes.back() != 1) {
    throw ConfigError("policy must map 3 inputs to 1 output");
  }

  policy.actor = Mlp(sizes, acts);
  auto& layers = policy.actor.layers();
  for (std::size_t l = 0; l < layers.size(); ++l) {
    std::size_t idx = 0;
    for (Eigen::Index r = 0; r < layers[l].weights.rows(); ++r) {
      for (Eigen::Index c = 0; c < layers[l].weights.cols(); ++c) {
        layers[l].weights(r, c) = weights[l][idx++];
      }
    }
    for (Eigen::Index r = 0; r < layers[l].bias.size(); ++r) {
      layers[l].bias(r) = biases[l][static_cast<std::size_t>(r)];
    }
  }
  if (!policy.actor.all_finite()) throw LoadError("policy contains non-finite weights");
  return policy;
}

Policy load_policy(const std::filesystem::path& path,
                   const std::optional<std::vector<std::size_t>>& expected_sizes) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot open policy file '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return policy_from_json(buffer.str(), expected_sizes);
}

PolicyController::PolicyController(Policy policy, std::string name)
    : policy_(std::move(policy)), name_(std::move(name)) {}

double PolicyController::accel(const ControlContext& context) const {
  const double y = actor_forward(policy_.actor, policy_.normalizer.normalize(context.state));
  return y * policy_.action_scale;
}

}  // namespace ecofollow
