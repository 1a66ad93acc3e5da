#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qrc/readout.hpp"
#include "qrc/reservoir.hpp"
#include "qrc/tokens.hpp"

namespace qrc {

enum class MemoryInit : std::uint8_t { Uniform = 0, ZerosOutcome = 1 };

std::string to_string(MemoryInit init);
MemoryInit parse_memory_init(const std::string& name);

/// h_0 under the chosen policy: uniform, or all mass on outcome |0...0>.
ProbVector initial_memory(MemoryInit init, int num_qubits);

/// Leaky memory update h' = (1 - epsilon) h + epsilon p.
ProbVector leak(const ProbVector& memory, const ProbVector& measured, double epsilon);

/// Called once per reservoir step with the memory that entered the step and
/// the measured vector it produced.
using StepObserver = std::function<void(std::size_t t, const ProbVector& memory, const ProbVector& measured)>;

struct EngineConfig {
  double epsilon = 0.3;
  MemoryInit h0 = MemoryInit::Uniform;

  void validate() const;
};

struct QrcModel {
  Reservoir reservoir;
  ReadoutModel readout;
  double epsilon = 0.3;
  MemoryInit h0 = MemoryInit::Uniform;
  int seed_token = 0;                   // first token of the training level
  std::size_t training_length = 0;
  std::vector<double> final_memory;     // h after the teacher-forced pass

  int vocab_size() const { return readout.vocab_size; }
};

struct GenerationConfig {
  std::size_t length = 157;
  double temperature = 1.0;
  std::uint64_t seed = 0;
  std::optional<MemoryInit> h0;  // unset: the model's policy
  std::optional<int> x0;         // unset: the first training token
  bool carry_memory = false;     // start from the memory left by training

  void validate() const;
};

struct Trajectory {
  std::vector<TrainingPair> pairs;
  ProbVector final_memory;
};

/// Teacher-forced pass: p_t = step(x_t, h_t), h_{t+1} = leak(h_t, p_t),
/// emitting (p_t, x_{t+1}) for t = 0..N-2.
Trajectory run_training_trajectory(const Reservoir& reservoir, std::span<const int> tokens, double epsilon,
                                   const ProbVector& h0, Rng& rng, const StepObserver& observer = {});

struct QrcTrainResult {
  QrcModel model;
  std::vector<double> loss_history;
};

/// Builds the reservoir, runs the trajectory once and fits the readout on it.
/// The shot stream uses mix_seed(train.seed, 1); the weight init uses train.seed.
QrcTrainResult train_qrc(std::span<const int> tokens, const ReservoirConfig& reservoir_config,
                         const TrainConfig& train_config, const EngineConfig& engine_config,
                         const StepObserver& observer = {});

/// Closed-loop generation of exactly `config.length` tokens (x0 excluded).
/// Reservoir shots draw from mix_seed(seed, 0), token sampling from
/// mix_seed(seed, 1), so the temperature never perturbs the shot stream.
TokenSequence generate(const QrcModel& model, const GenerationConfig& config, const StepObserver& observer = {});

}  // namespace qrc
