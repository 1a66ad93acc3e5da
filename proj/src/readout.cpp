#include "qrc/readout.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qrc/error.hpp"

namespace qrc {

namespace {

double log_sum_exp(std::span<const double> logits) {
  const double m = *std::max_element(logits.begin(), logits.end());
  double s = 0.0;
  for (double z : logits) s += std::exp(z - m);
  return m + std::log(s);
}

}  // namespace

ReadoutModel ReadoutModel::zeros(int vocab_size, std::size_t input_dim, bool use_bias) {
  if (vocab_size < 1 || input_dim < 1) throw std::invalid_argument("readout dimensions must be positive");
  ReadoutModel m;
  m.vocab_size = vocab_size;
  m.input_dim = input_dim;
  m.weights.assign(static_cast<std::size_t>(vocab_size) * input_dim, 0.0);
  m.bias.assign(static_cast<std::size_t>(vocab_size), 0.0);
  m.use_bias = use_bias;
  return m;
}

ReadoutModel ReadoutModel::uniform_init(int vocab_size, std::size_t input_dim, double scale, std::uint64_t seed,
                                        bool use_bias) {
  ReadoutModel m = zeros(vocab_size, input_dim, use_bias);
  Rng rng(seed);
  for (double& w : m.weights) w = scale * (2.0 * uniform01(rng) - 1.0);
  return m;
}

void ReadoutModel::validate() const {
  if (vocab_size < 1 || input_dim < 1) throw std::invalid_argument("readout dimensions must be positive");
  if (weights.size() != static_cast<std::size_t>(vocab_size) * input_dim ||
      bias.size() != static_cast<std::size_t>(vocab_size)) {
    throw std::invalid_argument("readout parameter sizes do not match dimensions");
  }
  auto finite = [](double v) { return std::isfinite(v); };
  if (!std::all_of(weights.begin(), weights.end(), finite) || !std::all_of(bias.begin(), bias.end(), finite)) {
    throw NumericError("readout parameters contain non-finite values");
  }
}

std::string to_string(Optimizer optimizer) {
  return optimizer == Optimizer::Sgd ? "sgd" : "adam";
}

Optimizer parse_optimizer(const std::string& name) {
  if (name == "sgd") return Optimizer::Sgd;
  if (name == "adam") return Optimizer::Adam;
  throw std::invalid_argument("unknown optimizer '" + name + "' (expected sgd or adam)");
}

void TrainConfig::validate() const {
  if (!(learning_rate > 0.0)) throw std::invalid_argument("learning rate must be positive");
  if (epochs < 0) throw std::invalid_argument("epoch count must be nonnegative");
  if (!(adam_beta1 >= 0.0 && adam_beta1 < 1.0) || !(adam_beta2 >= 0.0 && adam_beta2 < 1.0)) {
    throw std::invalid_argument("adam betas must lie in [0, 1)");
  }
  if (!(adam_eps > 0.0)) throw std::invalid_argument("adam epsilon must be positive");
  if (!(init_scale >= 0.0)) throw std::invalid_argument("init scale must be nonnegative");
}

std::vector<double> forward(const ReadoutModel& model, std::span<const double> features) {
  if (features.size() != model.input_dim) {
    throw std::invalid_argument("forward: feature length " + std::to_string(features.size()) + " != " +
                                std::to_string(model.input_dim));
  }
  std::vector<double> logits(static_cast<std::size_t>(model.vocab_size));
  for (int k = 0; k < model.vocab_size; ++k) {
    const double* row = model.weights.data() + static_cast<std::size_t>(k) * model.input_dim;
    double z = model.use_bias ? model.bias[static_cast<std::size_t>(k)] : 0.0;
    for (std::size_t j = 0; j < model.input_dim; ++j) z += row[j] * features[j];
    logits[static_cast<std::size_t>(k)] = z;
  }
  return logits;
}

LossGrad loss_and_grad(const ReadoutModel& model, std::span<const double> features, int target) {
  if (target < 0 || target >= model.vocab_size) throw std::out_of_range("loss_and_grad: target out of range");
  const std::vector<double> logits = forward(model, features);
  const double lse = log_sum_exp(logits);

  LossGrad out;
  out.loss = lse - logits[static_cast<std::size_t>(target)];
  out.grad_weights.assign(model.weights.size(), 0.0);
  out.grad_bias.assign(model.bias.size(), 0.0);
  for (int k = 0; k < model.vocab_size; ++k) {
    const auto ku = static_cast<std::size_t>(k);
    const double delta = std::exp(logits[ku] - lse) - (k == target ? 1.0 : 0.0);
    if (model.use_bias) out.grad_bias[ku] = delta;
    double* row = out.grad_weights.data() + ku * model.input_dim;
    for (std::size_t j = 0; j < model.input_dim; ++j) row[j] = delta * features[j];
  }
  return out;
}

TrainResult train(ReadoutModel model, std::span<const TrainingPair> trajectory, const TrainConfig& config) {
  config.validate();
  model.validate();
  TrainResult result{std::move(model), {}};
  if (config.epochs == 0) return result;
  if (trajectory.empty()) throw std::invalid_argument("train: empty trajectory");
  for (const TrainingPair& pair : trajectory) {
    if (pair.features.size() != result.model.input_dim) throw std::invalid_argument("train: feature dimension mismatch");
    if (pair.target < 0 || pair.target >= result.model.vocab_size) throw std::out_of_range("train: target out of range");
  }

  ReadoutModel& m = result.model;
  const std::size_t nw = m.weights.size();
  const std::size_t nb = m.bias.size();
  const std::size_t dim = m.input_dim;
  const auto f = static_cast<std::size_t>(m.vocab_size);
  const double inv_n = 1.0 / static_cast<double>(trajectory.size());

  std::vector<double> gw(nw), gb(nb);
  std::vector<double> mw(nw, 0.0), vw(nw, 0.0), mb(nb, 0.0), vb(nb, 0.0);
  std::vector<double> logits(f);
  result.loss_history.reserve(static_cast<std::size_t>(config.epochs));

  double beta1_pow = 1.0, beta2_pow = 1.0;
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    std::fill(gw.begin(), gw.end(), 0.0);
    std::fill(gb.begin(), gb.end(), 0.0);
    double loss = 0.0;

    // Inlined batch version of loss_and_grad to avoid per-sample allocations.
    for (const TrainingPair& pair : trajectory) {
      const auto x = pair.features.values();
      double zmax = -INFINITY;
      for (std::size_t k = 0; k < f; ++k) {
        const double* row = m.weights.data() + k * dim;
        double z = m.use_bias ? m.bias[k] : 0.0;
        for (std::size_t j = 0; j < dim; ++j) z += row[j] * x[j];
        logits[k] = z;
        zmax = std::max(zmax, z);
      }
      double s = 0.0;
      for (std::size_t k = 0; k < f; ++k) s += std::exp(logits[k] - zmax);
      const double lse = zmax + std::log(s);
      const auto t = static_cast<std::size_t>(pair.target);
      loss += lse - logits[t];
      for (std::size_t k = 0; k < f; ++k) {
        const double delta = (std::exp(logits[k] - lse) - (k == t ? 1.0 : 0.0)) * inv_n;
        gb[k] += delta;
        double* grow = gw.data() + k * dim;
        for (std::size_t j = 0; j < dim; ++j) grow[j] += delta * x[j];
      }
    }
    loss *= inv_n;
    if (!std::isfinite(loss)) {
      throw NumericError("training diverged at epoch " + std::to_string(epoch) + " (non-finite loss)");
    }
    result.loss_history.push_back(loss);

    if (config.optimizer == Optimizer::Sgd) {
      for (std::size_t i = 0; i < nw; ++i) m.weights[i] -= config.learning_rate * gw[i];
      if (m.use_bias) {
        for (std::size_t i = 0; i < nb; ++i) m.bias[i] -= config.learning_rate * gb[i];
      }
    } else {
      const double b1 = config.adam_beta1, b2 = config.adam_beta2;
      beta1_pow *= b1;
      beta2_pow *= b2;
      const double c1 = 1.0 - beta1_pow, c2 = 1.0 - beta2_pow;
      auto adam = [&](std::vector<double>& param, const std::vector<double>& grad, std::vector<double>& mom,
                      std::vector<double>& var) {
        for (std::size_t i = 0; i < param.size(); ++i) {
          mom[i] = b1 * mom[i] + (1.0 - b1) * grad[i];
          var[i] = b2 * var[i] + (1.0 - b2) * grad[i] * grad[i];
          param[i] -= config.learning_rate * (mom[i] / c1) / (std::sqrt(var[i] / c2) + config.adam_eps);
        }
      };
      adam(m.weights, gw, mw, vw);
      if (m.use_bias) adam(m.bias, gb, mb, vb);
    }
  }
  for (double w : m.weights) {
    if (!std::isfinite(w)) throw NumericError("training produced non-finite weights");
  }
  return result;
}

std::vector<double> softmax(std::span<const double> logits, double temperature) {
  if (!(temperature > 0.0)) throw std::invalid_argument("temperature must be positive");
  if (logits.empty()) throw std::invalid_argument("softmax: no logits");
  const double m = *std::max_element(logits.begin(), logits.end());
  std::vector<double> p(logits.size());
  double s = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    p[i] = std::exp((logits[i] - m) / temperature);
    s += p[i];
  }
  for (double& v : p) v /= s;
  return p;
}

int sample_next(std::span<const double> logits, double temperature, Rng& rng) {
  const std::vector<double> p = softmax(logits, temperature);
  return static_cast<int>(sample_categorical(p, rng));
}

}  // namespace qrc
