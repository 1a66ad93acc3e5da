#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "qrc/qsim.hpp"
#include "qrc/random.hpp"

namespace qrc {

enum class FidelityMode : std::uint8_t { Ideal = 0, Shots = 1, Noisy = 2 };

std::string to_string(FidelityMode mode);
/// Throws std::invalid_argument on unknown names.
FidelityMode parse_fidelity_mode(const std::string& name);

struct ReservoirConfig {
  int num_qubits = 6;
  int vocab_size = 32;
  // Smallest seed in [0, 2000) maximizing token_separation at q = 6, f = 32.
  std::uint64_t random_block_seed = 62;
  int random_block_len = 0;  // 0 selects 3 * num_qubits
  std::size_t shots = 4000;  // 0 means exact probabilities
  FidelityMode mode = FidelityMode::Shots;
  NoiseSpec noise;

  int block_length() const { return random_block_len > 0 ? random_block_len : 3 * num_qubits; }
  std::size_t state_dim() const { return std::size_t{1} << num_qubits; }
  void validate() const;
};

/// Fixed reservoir: the random gate block is drawn once at construction and
/// never changes afterwards.
class Reservoir {
 public:
  explicit Reservoir(ReservoirConfig config);
  /// Uses a caller-supplied random block (may be empty).
  Reservoir(ReservoirConfig config, Circuit random_block);

  const ReservoirConfig& config() const { return config_; }
  const Circuit& random_block() const { return random_block_; }
  int num_qubits() const { return config_.num_qubits; }
  std::size_t state_dim() const { return config_.state_dim(); }

  /// Executes `circuit` from |0...0> under the configured fidelity mode.
  ProbVector execute(const Circuit& circuit, Rng& rng) const;

 private:
  ReservoirConfig config_;
  Circuit random_block_;
};

/// `len` gates, kind uniform over {X, H, CNOT}, qubits uniform (CNOT pairs distinct).
Circuit build_random_block(std::uint64_t seed, int num_qubits, int len);

/// Token -> q rotation angles. The first min(ceil(log2 f), q - 1) qubits carry
/// pi * bit_i(x); every remaining qubit carries 2 pi (x + 1) / (f + 1).
std::vector<double> encode_input(int token, const ReservoirConfig& config);

/// angle_i = pi * P(qubit i reads 1 under h).
std::vector<double> encode_memory(const ProbVector& memory, const ReservoirConfig& config);

/// RY layer with the given angles followed by the CNOT chain 0->1->...->q-1.
Circuit embedding_block(std::span<const double> angles);

/// input embedding, memory embedding, then the frozen random block.
Circuit build_step_circuit(int token, const ProbVector& memory, const Reservoir& reservoir);

/// One reservoir step (x_t, h_t) -> p_t.
ProbVector step(int token, const ProbVector& memory, const Reservoir& reservoir, Rng& rng);

/// Smallest max-abs distance between the exact outputs of any two tokens from
/// uniform memory. Zero means two tokens are indistinguishable to the readout.
double token_separation(const Reservoir& reservoir);

}  // namespace qrc
