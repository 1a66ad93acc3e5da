#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qrc/qsim.hpp"
#include "qrc/random.hpp"

namespace qrc {

/// Linear readout: logits = W p + b, W is f x 2^q (row-major).
struct ReadoutModel {
  int vocab_size = 0;
  std::size_t input_dim = 0;
  std::vector<double> weights;
  std::vector<double> bias;
  bool use_bias = true;

  static ReadoutModel zeros(int vocab_size, std::size_t input_dim, bool use_bias = true);
  /// Entries uniform in [-scale, +scale]; the bias starts at zero.
  static ReadoutModel uniform_init(int vocab_size, std::size_t input_dim, double scale, std::uint64_t seed,
                                   bool use_bias = true);

  double weight(int row, std::size_t col) const { return weights[static_cast<std::size_t>(row) * input_dim + col]; }
  double& weight(int row, std::size_t col) { return weights[static_cast<std::size_t>(row) * input_dim + col]; }
  void validate() const;

  friend bool operator==(const ReadoutModel&, const ReadoutModel&) = default;
};

enum class Optimizer : std::uint8_t { Sgd = 0, Adam = 1 };

std::string to_string(Optimizer optimizer);
Optimizer parse_optimizer(const std::string& name);

struct TrainConfig {
  double learning_rate = 1e-2;
  int epochs = 2000;
  Optimizer optimizer = Optimizer::Adam;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_eps = 1e-8;
  double init_scale = 0.1;
  bool use_bias = true;
  std::uint64_t seed = 1;

  void validate() const;
};

struct TrainingPair {
  ProbVector features;
  int target = 0;
};

struct LossGrad {
  double loss = 0.0;
  std::vector<double> grad_weights;  // same layout as ReadoutModel::weights
  std::vector<double> grad_bias;
};

struct TrainResult {
  ReadoutModel model;
  std::vector<double> loss_history;  // mean cross-entropy of each epoch, before its update
};

std::vector<double> forward(const ReadoutModel& model, std::span<const double> features);

/// Softmax cross-entropy for one sample, with exact gradients.
LossGrad loss_and_grad(const ReadoutModel& model, std::span<const double> features, int target);

/// Full-batch training. Throws NumericError naming the epoch if the loss
/// stops being finite.
TrainResult train(ReadoutModel model, std::span<const TrainingPair> trajectory, const TrainConfig& config);

/// softmax(logits / temperature), stabilized by max subtraction.
std::vector<double> softmax(std::span<const double> logits, double temperature = 1.0);

/// Draws a token from softmax(logits / temperature). Requires temperature > 0.
int sample_next(std::span<const double> logits, double temperature, Rng& rng);

}  // namespace qrc
