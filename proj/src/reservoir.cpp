#include "qrc/reservoir.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <bit>
#include <numbers>
#include <stdexcept>

namespace qrc {

std::string to_string(FidelityMode mode) {
  switch (mode) {
    case FidelityMode::Ideal: return "ideal";
    case FidelityMode::Shots: return "shots";
    case FidelityMode::Noisy: return "noisy";
  }
  return "?";
}

FidelityMode parse_fidelity_mode(const std::string& name) {
  if (name == "ideal") return FidelityMode::Ideal;
  if (name == "shots") return FidelityMode::Shots;
  if (name == "noisy") return FidelityMode::Noisy;
  throw std::invalid_argument("unknown fidelity mode '" + name + "' (expected ideal, shots or noisy)");
}

void ReservoirConfig::validate() const {
  if (num_qubits < 2 || num_qubits > 12) {
    throw std::invalid_argument("reservoir qubit count must lie in [2, 12], got " + std::to_string(num_qubits));
  }
  if (vocab_size < 2) throw std::invalid_argument("vocabulary size must be >= 2");
  if (random_block_len < 0) throw std::invalid_argument("random block length must be >= 1");
  if (mode == FidelityMode::Shots && shots == 0) {
    throw std::invalid_argument("shots mode requires shots >= 1");
  }
  if (mode == FidelityMode::Noisy) noise.validate(num_qubits);
}

Reservoir::Reservoir(ReservoirConfig config)
    : config_(std::move(config)) {
  config_.validate();
  random_block_ = build_random_block(config_.random_block_seed, config_.num_qubits, config_.block_length());
}

Reservoir::Reservoir(ReservoirConfig config, Circuit random_block)
    : config_(std::move(config)), random_block_(std::move(random_block)) {
  config_.validate();
  if (random_block_.num_qubits != config_.num_qubits) {
    throw std::invalid_argument("random block qubit count does not match reservoir");
  }
  random_block_.validate();
}

ProbVector Reservoir::execute(const Circuit& circuit, Rng& rng) const {
  switch (config_.mode) {
    case FidelityMode::Ideal:
      return ideal_probs(run_pure(circuit, PureState::zero(config_.num_qubits)));
    case FidelityMode::Shots:
      return sample_shots(ideal_probs(run_pure(circuit, PureState::zero(config_.num_qubits))), config_.shots, rng);
    case FidelityMode::Noisy: {
      ProbVector p = ideal_probs(run_mixed(circuit, config_.noise, MixedState::zero(config_.num_qubits)));
      if (config_.noise.has_readout_flips()) p = apply_readout_flips(p, config_.noise.readout_flip);
      if (config_.shots > 0) p = sample_shots(p, config_.shots, rng);
      return p;
    }
  }
  throw std::logic_error("unreachable fidelity mode");
}

Circuit build_random_block(std::uint64_t seed, int num_qubits, int len) {
  if (num_qubits < 2) throw std::invalid_argument("random block needs at least 2 qubits");
  if (len < 1) throw std::invalid_argument("random block length must be >= 1");
  Rng rng(seed);
  const auto q = static_cast<std::size_t>(num_qubits);
  Circuit block(num_qubits);
  block.gates.reserve(static_cast<std::size_t>(len));
  for (int i = 0; i < len; ++i) {
    switch (uniform_index(rng, 3)) {
      case 0:
        block.append(Gate::x(static_cast<int>(uniform_index(rng, q))));
        break;
      case 1:
        block.append(Gate::h(static_cast<int>(uniform_index(rng, q))));
        break;
      default: {
        const auto control = uniform_index(rng, q);
        auto target = uniform_index(rng, q - 1);
        if (target >= control) ++target;
        block.append(Gate::cnot(static_cast<int>(control), static_cast<int>(target)));
        break;
      }
    }
  }
  return block;
}

std::vector<double> encode_input(int token, const ReservoirConfig& config) {
  if (token < 0 || token >= config.vocab_size) {
    throw std::out_of_range("token " + std::to_string(token) + " outside vocabulary of size " +
                            std::to_string(config.vocab_size));
  }
  const int q = config.num_qubits;
  const int bits = std::bit_width(static_cast<unsigned>(config.vocab_size - 1));
  const int bit_qubits = std::min(bits, q - 1);
  const double scalar = 2.0 * std::numbers::pi * (token + 1) / (config.vocab_size + 1);
  std::vector<double> angles(static_cast<std::size_t>(q));
  for (int i = 0; i < q; ++i) {
    angles[static_cast<std::size_t>(i)] = i < bit_qubits ? std::numbers::pi * ((token >> i) & 1) : scalar;
  }
  return angles;
}

std::vector<double> encode_memory(const ProbVector& memory, const ReservoirConfig& config) {
  if (memory.num_qubits() != config.num_qubits) {
    throw std::invalid_argument("memory vector has " + std::to_string(memory.size()) + " entries, expected " +
                                std::to_string(config.state_dim()));
  }
  const auto q = static_cast<std::size_t>(config.num_qubits);
  std::vector<double> marginal(q, 0.0);
  for (std::size_t s = 0; s < memory.size(); ++s) {
    for (std::size_t i = 0; i < q; ++i) {
      if ((s >> i) & 1U) marginal[i] += memory[s];
    }
  }
  for (double& m : marginal) m = std::numbers::pi * std::clamp(m, 0.0, 1.0);
  return marginal;
}

Circuit embedding_block(std::span<const double> angles) {
  const int q = static_cast<int>(angles.size());
  Circuit block(q);
  for (int i = 0; i < q; ++i) block.append(Gate::ry(i, angles[static_cast<std::size_t>(i)]));
  for (int i = 0; i + 1 < q; ++i) block.append(Gate::cnot(i, i + 1));
  return block;
}

Circuit build_step_circuit(int token, const ProbVector& memory, const Reservoir& reservoir) {
  const auto& cfg = reservoir.config();
  Circuit circuit = embedding_block(encode_input(token, cfg));
  circuit.append(embedding_block(encode_memory(memory, cfg)));
  circuit.append(reservoir.random_block());
  return circuit;
}

ProbVector step(int token, const ProbVector& memory, const Reservoir& reservoir, Rng& rng) {
  return reservoir.execute(build_step_circuit(token, memory, reservoir), rng);
}

double token_separation(const Reservoir& reservoir) {
  const int f = reservoir.config().vocab_size;
  const ProbVector uniform = ProbVector::uniform(reservoir.num_qubits());
  std::vector<ProbVector> outputs;
  outputs.reserve(static_cast<std::size_t>(f));
  for (int x = 0; x < f; ++x) {
    outputs.push_back(ideal_probs(run_pure(build_step_circuit(x, uniform, reservoir),
                                           PureState::zero(reservoir.num_qubits()))));
  }
  double best = std::numeric_limits<double>::infinity();
  for (int a = 0; a < f; ++a) {
    for (int b = a + 1; b < f; ++b) {
      double d = 0.0;
      for (std::size_t s = 0; s < outputs[a].size(); ++s) d = std::max(d, std::abs(outputs[a][s] - outputs[b][s]));
      best = std::min(best, d);
    }
  }
  return best;
}

}  // namespace qrc
