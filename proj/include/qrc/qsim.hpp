#pragma once

// Minimal circuit simulator over the gate set {X, H, CNOT, RY}.
//
// Qubit 0 is the least-significant bit of a basis-state index, so outcome s
// has qubit i measured as (s >> i) & 1. Pure states drive ideal runs; noisy
// runs evolve a dense density matrix with per-gate depolarizing channels.

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qrc/random.hpp"

namespace qrc {

using Complex = std::complex<double>;

enum class GateKind : std::uint8_t { X = 0, H = 1, CNOT = 2, RY = 3 };

std::string to_string(GateKind kind);

struct Gate {
  GateKind kind = GateKind::X;
  int target = 0;
  int control = -1;  // CNOT only
  double angle = 0.0;  // RY only, radians

  static Gate x(int qubit) { return {GateKind::X, qubit, -1, 0.0}; }
  static Gate h(int qubit) { return {GateKind::H, qubit, -1, 0.0}; }
  static Gate cnot(int control, int target) { return {GateKind::CNOT, target, control, 0.0}; }
  static Gate ry(int qubit, double angle) { return {GateKind::RY, qubit, -1, angle}; }

  int arity() const { return kind == GateKind::CNOT ? 2 : 1; }
  /// Throws std::out_of_range / std::invalid_argument if the gate does not fit `num_qubits`.
  void validate(int num_qubits) const;

  friend bool operator==(const Gate&, const Gate&) = default;
};

struct Circuit {
  int num_qubits = 0;
  std::vector<Gate> gates;

  Circuit() = default;
  explicit Circuit(int qubits) : num_qubits(qubits) {}

  void append(const Gate& gate) { gates.push_back(gate); }
  void append(const Circuit& other);
  void validate() const;

  friend bool operator==(const Circuit&, const Circuit&) = default;
};

/// Normalized statevector of 2^q amplitudes.
class PureState {
 public:
  static PureState zero(int num_qubits);
  static PureState basis(int num_qubits, std::size_t index);
  /// Throws std::invalid_argument unless the length is a power of two and the norm is 1 within 1e-9.
  static PureState from_amplitudes(std::vector<Complex> amplitudes);

  int num_qubits() const { return num_qubits_; }
  std::size_t dim() const { return amplitudes_.size(); }
  std::span<const Complex> amplitudes() const { return amplitudes_; }
  double norm_squared() const;

  // In-place kernels used by the simulator loops.
  void apply_in_place(const Gate& gate);

 private:
  PureState(int num_qubits, std::vector<Complex> amplitudes)
      : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {}

  int num_qubits_ = 0;
  std::vector<Complex> amplitudes_;
};

/// Dense density matrix, row-major, 2^q x 2^q.
class MixedState {
 public:
  static MixedState zero(int num_qubits);
  static MixedState from_pure(const PureState& psi);
  /// Throws std::invalid_argument unless trace 1 and Hermitian within 1e-9.
  static MixedState from_matrix(int num_qubits, std::vector<Complex> rho);

  int num_qubits() const { return num_qubits_; }
  std::size_t dim() const { return dim_; }
  const Complex& operator()(std::size_t row, std::size_t col) const { return rho_[row * dim_ + col]; }
  std::span<const Complex> data() const { return rho_; }
  Complex trace() const;

  void apply_in_place(const Gate& gate);
  /// rho -> (1 - lambda) rho + lambda * Tr_targets(rho) (x) I / 2^k.
  void depolarize_in_place(std::span<const int> targets, double lambda);

 private:
  MixedState(int num_qubits, std::vector<Complex> rho)
      : num_qubits_(num_qubits), dim_(std::size_t{1} << num_qubits), rho_(std::move(rho)) {}

  Complex& at(std::size_t row, std::size_t col) { return rho_[row * dim_ + col]; }

  int num_qubits_ = 0;
  std::size_t dim_ = 0;
  std::vector<Complex> rho_;
};

/// Length-2^q outcome distribution: entries >= 0, sum 1 within 1e-9.
class ProbVector {
 public:
  /// Throws std::invalid_argument when the invariants do not hold.
  explicit ProbVector(std::vector<double> probs);

  static ProbVector uniform(int num_qubits);
  static ProbVector point_mass(int num_qubits, std::size_t outcome);

  int num_qubits() const { return num_qubits_; }
  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  std::span<const double> values() const { return probs_; }

  friend bool operator==(const ProbVector&, const ProbVector&) = default;

 private:
  int num_qubits_ = 0;
  std::vector<double> probs_;
};

/// Checks the ProbVector invariants on raw values without constructing one.
bool is_probability_vector(std::span<const double> values, double tolerance = 1e-9);

/// Per-gate noise. `gate_depol` holds calibration-profile overrides per gate
/// kind; when unset, 1-qubit gates use `one_qubit_depol` and CNOT uses
/// `two_qubit_depol`.
struct NoiseSpec {
  double two_qubit_depol = 0.0;
  double one_qubit_depol = 0.0;
  std::vector<double> readout_flip;  // per qubit; empty means no flips
  std::array<std::optional<double>, 4> gate_depol{};

  /// p on 2-qubit gates, p/10 on 1-qubit gates.
  static NoiseSpec depolarizing(double p);

  double strength(GateKind kind) const;
  bool has_readout_flips() const;
  void validate(int num_qubits) const;
};

PureState apply_gate(const PureState& state, const Gate& gate);
PureState run_pure(const Circuit& circuit, const PureState& initial);
MixedState run_mixed(const Circuit& circuit, const NoiseSpec& noise, const MixedState& initial);

/// Exact outcome probabilities. Negative entries above -1e-12 are clamped to
/// zero before renormalizing; anything lower throws NumericError.
ProbVector ideal_probs(const PureState& state);
ProbVector ideal_probs(const MixedState& state);

/// Empirical frequencies of `shots` categorical draws.
ProbVector sample_shots(const ProbVector& probs, std::size_t shots, Rng& rng);

/// Independent per-qubit bit-flip channel on the outcome distribution.
ProbVector apply_readout_flips(const ProbVector& probs, std::span<const double> flips);

}  // namespace qrc
