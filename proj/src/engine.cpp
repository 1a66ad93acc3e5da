#include "qrc/engine.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace qrc {

std::string to_string(MemoryInit init) {
  return init == MemoryInit::Uniform ? "uniform" : "zeros-outcome";
}

MemoryInit parse_memory_init(const std::string& name) {
  if (name == "uniform") return MemoryInit::Uniform;
  if (name == "zeros-outcome") return MemoryInit::ZerosOutcome;
  throw std::invalid_argument("unknown memory init '" + name + "' (expected uniform or zeros-outcome)");
}

ProbVector initial_memory(MemoryInit init, int num_qubits) {
  return init == MemoryInit::Uniform ? ProbVector::uniform(num_qubits) : ProbVector::point_mass(num_qubits, 0);
}

ProbVector leak(const ProbVector& memory, const ProbVector& measured, double epsilon) {
  if (memory.size() != measured.size()) throw std::invalid_argument("leak: dimension mismatch");
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw std::invalid_argument("leak: epsilon outside [0, 1]");
  std::vector<double> next(memory.size());
  for (std::size_t i = 0; i < next.size(); ++i) next[i] = (1.0 - epsilon) * memory[i] + epsilon * measured[i];
  return ProbVector(std::move(next));
}

void EngineConfig::validate() const {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) throw std::invalid_argument("leaking rate must lie in (0, 1]");
}

void GenerationConfig::validate() const {
  if (length < 1) throw std::invalid_argument("generation length must be >= 1");
  if (!(temperature > 0.0) || !std::isfinite(temperature)) throw std::invalid_argument("temperature must be positive");
}

Trajectory run_training_trajectory(const Reservoir& reservoir, std::span<const int> tokens, double epsilon,
                                   const ProbVector& h0, Rng& rng, const StepObserver& observer) {
  if (tokens.size() < 2) throw std::invalid_argument("training sequence needs at least 2 tokens");
  check_tokens(tokens, reservoir.config().vocab_size);
  if (h0.num_qubits() != reservoir.num_qubits()) throw std::invalid_argument("h0 dimension mismatch");

  Trajectory out{{}, h0};
  out.pairs.reserve(tokens.size() - 1);
  ProbVector& h = out.final_memory;
  for (std::size_t t = 0; t + 1 < tokens.size(); ++t) {
    ProbVector p = step(tokens[t], h, reservoir, rng);
    assert(is_probability_vector(p.values()));
    if (observer) observer(t, h, p);
    h = leak(h, p, epsilon);
    out.pairs.push_back({std::move(p), tokens[t + 1]});
  }
  return out;
}

QrcTrainResult train_qrc(std::span<const int> tokens, const ReservoirConfig& reservoir_config,
                         const TrainConfig& train_config, const EngineConfig& engine_config,
                         const StepObserver& observer) {
  engine_config.validate();
  train_config.validate();
  Reservoir reservoir(reservoir_config);

  Rng shot_rng(mix_seed(train_config.seed, 1));
  Trajectory traj = run_training_trajectory(reservoir, tokens, engine_config.epsilon,
                                            initial_memory(engine_config.h0, reservoir.num_qubits()), shot_rng,
                                            observer);

  ReadoutModel init = ReadoutModel::uniform_init(reservoir_config.vocab_size, reservoir.state_dim(),
                                                 train_config.init_scale, train_config.seed, train_config.use_bias);
  TrainResult fit = train(std::move(init), traj.pairs, train_config);

  QrcModel model{std::move(reservoir),
                 std::move(fit.model),
                 engine_config.epsilon,
                 engine_config.h0,
                 tokens.front(),
                 tokens.size(),
                 {traj.final_memory.values().begin(), traj.final_memory.values().end()}};
  return {std::move(model), std::move(fit.loss_history)};
}

TokenSequence generate(const QrcModel& model, const GenerationConfig& config, const StepObserver& observer) {
  config.validate();
  const int f = model.vocab_size();
  const int q = model.reservoir.num_qubits();

  int x = config.x0.value_or(model.seed_token);
  if (x < 0 || x >= f) throw std::out_of_range("x0 outside vocabulary");
  ProbVector h = config.carry_memory && !model.final_memory.empty()
                     ? ProbVector(model.final_memory)
                     : initial_memory(config.h0.value_or(model.h0), q);

  Rng shot_rng(mix_seed(config.seed, 0));
  Rng token_rng(mix_seed(config.seed, 1));

  TokenSequence out;
  out.reserve(config.length);
  for (std::size_t t = 0; t < config.length; ++t) {
    ProbVector p = step(x, h, model.reservoir, shot_rng);
    assert(is_probability_vector(p.values()));
    if (observer) observer(t, h, p);
    const std::vector<double> logits = forward(model.readout, p.values());
    x = sample_next(logits, config.temperature, token_rng);
    out.push_back(x);
    h = leak(h, p, model.epsilon);
  }
  return out;
}

}  // namespace qrc
