#include "qrc/qsim.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qrc/error.hpp"

namespace qrc {

namespace {

constexpr double kStateTolerance = 1e-9;
constexpr double kClampTolerance = 1e-12;

using Matrix2 = std::array<Complex, 4>;  // row-major

Matrix2 single_qubit_matrix(const Gate& gate) {
  switch (gate.kind) {
    case GateKind::X:
      return {0.0, 1.0, 1.0, 0.0};
    case GateKind::H: {
      const double s = 1.0 / std::numbers::sqrt2;
      return {s, s, s, -s};
    }
    case GateKind::RY: {
      const double c = std::cos(gate.angle / 2.0);
      const double s = std::sin(gate.angle / 2.0);
      return {c, -s, s, c};
    }
    case GateKind::CNOT:
      break;
  }
  throw std::logic_error("single_qubit_matrix: not a 1-qubit gate");
}

int qubits_for_dim(std::size_t dim) {
  if (dim == 0 || !std::has_single_bit(dim)) {
    throw std::invalid_argument("state dimension must be a power of two, got " + std::to_string(dim));
  }
  return std::countr_zero(dim);
}

void check_qubit_count(int num_qubits) {
  if (num_qubits < 1 || num_qubits > 16) {
    throw std::out_of_range("qubit count out of supported range [1, 16]: " + std::to_string(num_qubits));
  }
}

std::vector<double> clamp_and_normalize(std::vector<double> probs) {
  double total = 0.0;
  for (double& p : probs) {
    if (p < 0.0) {
      if (p < -kClampTolerance) {
        throw NumericError("negative outcome probability " + std::to_string(p) + " beyond round-off");
      }
      p = 0.0;
    }
    total += p;
  }
  if (!(total > 0.0)) throw NumericError("outcome probabilities sum to zero");
  for (double& p : probs) p /= total;
  return probs;
}

}  // namespace

std::string to_string(GateKind kind) {
  switch (kind) {
    case GateKind::X: return "x";
    case GateKind::H: return "h";
    case GateKind::CNOT: return "cnot";
    case GateKind::RY: return "ry";
  }
  return "?";
}

void Gate::validate(int num_qubits) const {
  if (target < 0 || target >= num_qubits) {
    throw std::out_of_range("gate target " + std::to_string(target) + " outside " +
                            std::to_string(num_qubits) + " qubits");
  }
  if (kind == GateKind::CNOT) {
    if (control < 0 || control >= num_qubits) {
      throw std::out_of_range("CNOT control " + std::to_string(control) + " outside " +
                              std::to_string(num_qubits) + " qubits");
    }
    if (control == target) throw std::invalid_argument("CNOT control equals target");
  }
  if (kind == GateKind::RY && !std::isfinite(angle)) {
    throw std::invalid_argument("RY angle is not finite");
  }
}

void Circuit::append(const Circuit& other) {
  if (other.num_qubits != num_qubits) throw std::invalid_argument("Circuit::append: qubit counts differ");
  gates.insert(gates.end(), other.gates.begin(), other.gates.end());
}

void Circuit::validate() const {
  check_qubit_count(num_qubits);
  for (const Gate& g : gates) g.validate(num_qubits);
}

// ---------------------------------------------------------------- PureState

PureState PureState::zero(int num_qubits) { return basis(num_qubits, 0); }

PureState PureState::basis(int num_qubits, std::size_t index) {
  check_qubit_count(num_qubits);
  std::vector<Complex> amps(std::size_t{1} << num_qubits);
  if (index >= amps.size()) throw std::out_of_range("basis index out of range");
  amps[index] = 1.0;
  return PureState(num_qubits, std::move(amps));
}

PureState PureState::from_amplitudes(std::vector<Complex> amplitudes) {
  const int q = qubits_for_dim(amplitudes.size());
  PureState psi(q, std::move(amplitudes));
  if (std::abs(psi.norm_squared() - 1.0) > kStateTolerance) {
    throw std::invalid_argument("PureState: amplitudes are not normalized");
  }
  return psi;
}

double PureState::norm_squared() const {
  double n = 0.0;
  for (const Complex& a : amplitudes_) n += std::norm(a);
  return n;
}

void PureState::apply_in_place(const Gate& gate) {
  gate.validate(num_qubits_);
  const std::size_t dim = amplitudes_.size();
  const std::size_t tmask = std::size_t{1} << gate.target;
  if (gate.kind == GateKind::CNOT) {
    const std::size_t cmask = std::size_t{1} << gate.control;
    for (std::size_t i = 0; i < dim; ++i) {
      if ((i & cmask) && !(i & tmask)) std::swap(amplitudes_[i], amplitudes_[i | tmask]);
    }
    return;
  }
  const Matrix2 u = single_qubit_matrix(gate);
  for (std::size_t i = 0; i < dim; ++i) {
    if (i & tmask) continue;
    const Complex a0 = amplitudes_[i];
    const Complex a1 = amplitudes_[i | tmask];
    amplitudes_[i] = u[0] * a0 + u[1] * a1;
    amplitudes_[i | tmask] = u[2] * a0 + u[3] * a1;
  }
}

// --------------------------------------------------------------- MixedState

MixedState MixedState::zero(int num_qubits) { return from_pure(PureState::zero(num_qubits)); }

MixedState MixedState::from_pure(const PureState& psi) {
  const std::size_t dim = psi.dim();
  const auto amps = psi.amplitudes();
  std::vector<Complex> rho(dim * dim);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) rho[r * dim + c] = amps[r] * std::conj(amps[c]);
  }
  return MixedState(psi.num_qubits(), std::move(rho));
}

MixedState MixedState::from_matrix(int num_qubits, std::vector<Complex> rho) {
  check_qubit_count(num_qubits);
  const std::size_t dim = std::size_t{1} << num_qubits;
  if (rho.size() != dim * dim) throw std::invalid_argument("MixedState: matrix size does not match qubit count");
  MixedState state(num_qubits, std::move(rho));
  if (std::abs(state.trace() - Complex(1.0)) > kStateTolerance) {
    throw std::invalid_argument("MixedState: trace is not 1");
  }
  for (std::size_t r = 0; r < dim; ++r) {
    if (state(r, r).real() < -kClampTolerance) throw std::invalid_argument("MixedState: negative diagonal");
    for (std::size_t c = r + 1; c < dim; ++c) {
      if (std::abs(state(r, c) - std::conj(state(c, r))) > kStateTolerance) {
        throw std::invalid_argument("MixedState: matrix is not Hermitian");
      }
    }
  }
  return state;
}

Complex MixedState::trace() const {
  Complex t = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

void MixedState::apply_in_place(const Gate& gate) {
  gate.validate(num_qubits_);
  const std::size_t tmask = std::size_t{1} << gate.target;
  if (gate.kind == GateKind::CNOT) {
    // Permutation P with P = P^T = P^-1: rho'[r, c] = rho[P r, P c].
    const std::size_t cmask = std::size_t{1} << gate.control;
    auto perm = [&](std::size_t i) { return (i & cmask) ? (i ^ tmask) : i; };
    std::vector<Complex> out(rho_.size());
    for (std::size_t r = 0; r < dim_; ++r) {
      const std::size_t pr = perm(r);
      for (std::size_t c = 0; c < dim_; ++c) out[r * dim_ + c] = rho_[pr * dim_ + perm(c)];
    }
    rho_ = std::move(out);
    return;
  }
  const Matrix2 u = single_qubit_matrix(gate);
  // U rho
  for (std::size_t r = 0; r < dim_; ++r) {
    if (r & tmask) continue;
    const std::size_t r1 = r | tmask;
    for (std::size_t c = 0; c < dim_; ++c) {
      const Complex a = at(r, c);
      const Complex b = at(r1, c);
      at(r, c) = u[0] * a + u[1] * b;
      at(r1, c) = u[2] * a + u[3] * b;
    }
  }
  // (U rho) U^dagger
  const Complex v00 = std::conj(u[0]), v01 = std::conj(u[1]);
  const Complex v10 = std::conj(u[2]), v11 = std::conj(u[3]);
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t c = 0; c < dim_; ++c) {
      if (c & tmask) continue;
      const std::size_t c1 = c | tmask;
      const Complex a = at(r, c);
      const Complex b = at(r, c1);
      at(r, c) = a * v00 + b * v01;
      at(r, c1) = a * v10 + b * v11;
    }
  }
}

void MixedState::depolarize_in_place(std::span<const int> targets, double lambda) {
  if (lambda < 0.0 || lambda > 1.0) throw std::invalid_argument("depolarizing strength outside [0, 1]");
  if (lambda == 0.0) return;
  std::size_t mask = 0;
  for (int t : targets) {
    if (t < 0 || t >= num_qubits_) throw std::out_of_range("depolarizing target out of range");
    mask |= std::size_t{1} << t;
  }
  const int k = std::popcount(mask);
  const double share = lambda / static_cast<double>(std::size_t{1} << k);

  // Enumerate the 2^k assignments of the target bits.
  std::vector<std::size_t> patterns{0};
  for (int t : targets) {
    const std::size_t bit = std::size_t{1} << t;
    const std::size_t n = patterns.size();
    for (std::size_t i = 0; i < n; ++i) patterns.push_back(patterns[i] | bit);
  }

  std::vector<Complex> out(rho_.size());
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t c = 0; c < dim_; ++c) {
      Complex v = (1.0 - lambda) * rho_[r * dim_ + c];
      if ((r & mask) == (c & mask)) {
        const std::size_t rb = r & ~mask;
        const std::size_t cb = c & ~mask;
        Complex partial = 0.0;
        for (std::size_t b : patterns) partial += rho_[(rb | b) * dim_ + (cb | b)];
        v += share * partial;
      }
      out[r * dim_ + c] = v;
    }
  }
  rho_ = std::move(out);
}

// --------------------------------------------------------------- ProbVector

ProbVector::ProbVector(std::vector<double> probs) : probs_(std::move(probs)) {
  num_qubits_ = qubits_for_dim(probs_.size());
  if (!is_probability_vector(probs_)) {
    throw std::invalid_argument("ProbVector: entries must be nonnegative and sum to 1");
  }
}

ProbVector ProbVector::uniform(int num_qubits) {
  check_qubit_count(num_qubits);
  const std::size_t dim = std::size_t{1} << num_qubits;
  return ProbVector(std::vector<double>(dim, 1.0 / static_cast<double>(dim)));
}

ProbVector ProbVector::point_mass(int num_qubits, std::size_t outcome) {
  check_qubit_count(num_qubits);
  std::vector<double> p(std::size_t{1} << num_qubits, 0.0);
  if (outcome >= p.size()) throw std::out_of_range("point_mass: outcome out of range");
  p[outcome] = 1.0;
  return ProbVector(std::move(p));
}

bool is_probability_vector(std::span<const double> values, double tolerance) {
  double total = 0.0;
  for (double v : values) {
    if (!(v >= 0.0) || !std::isfinite(v)) return false;
    total += v;
  }
  return std::abs(total - 1.0) <= tolerance;
}

// ---------------------------------------------------------------- NoiseSpec

NoiseSpec NoiseSpec::depolarizing(double p) {
  NoiseSpec spec;
  spec.two_qubit_depol = p;
  spec.one_qubit_depol = p / 10.0;
  return spec;
}

double NoiseSpec::strength(GateKind kind) const {
  if (const auto& v = gate_depol[static_cast<std::size_t>(kind)]) return *v;
  return kind == GateKind::CNOT ? two_qubit_depol : one_qubit_depol;
}

bool NoiseSpec::has_readout_flips() const {
  return std::any_of(readout_flip.begin(), readout_flip.end(), [](double f) { return f != 0.0; });
}

void NoiseSpec::validate(int num_qubits) const {
  auto check = [](double p, const char* what) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument(std::string(what) + " must lie in [0, 1]");
  };
  check(two_qubit_depol, "two_qubit_depol");
  check(one_qubit_depol, "one_qubit_depol");
  for (const auto& v : gate_depol) {
    if (v) check(*v, "per-gate depolarizing strength");
  }
  for (double f : readout_flip) check(f, "readout flip probability");
  if (!readout_flip.empty() && static_cast<int>(readout_flip.size()) != num_qubits) {
    throw std::invalid_argument("readout_flip has " + std::to_string(readout_flip.size()) +
                                " entries for " + std::to_string(num_qubits) + " qubits");
  }
}

// --------------------------------------------------------------- operations

PureState apply_gate(const PureState& state, const Gate& gate) {
  PureState out = state;
  out.apply_in_place(gate);
  return out;
}

PureState run_pure(const Circuit& circuit, const PureState& initial) {
  if (circuit.num_qubits != initial.num_qubits()) {
    throw std::invalid_argument("run_pure: circuit and state qubit counts differ");
  }
  PureState psi = initial;
  for (const Gate& g : circuit.gates) psi.apply_in_place(g);
  return psi;
}

MixedState run_mixed(const Circuit& circuit, const NoiseSpec& noise, const MixedState& initial) {
  if (circuit.num_qubits != initial.num_qubits()) {
    throw std::invalid_argument("run_mixed: circuit and state qubit counts differ");
  }
  noise.validate(circuit.num_qubits);
  MixedState rho = initial;
  for (const Gate& g : circuit.gates) {
    rho.apply_in_place(g);
    const double lambda = noise.strength(g.kind);
    if (lambda == 0.0) continue;
    if (g.kind == GateKind::CNOT) {
      const std::array<int, 2> targets{g.control, g.target};
      rho.depolarize_in_place(targets, lambda);
    } else {
      const std::array<int, 1> targets{g.target};
      rho.depolarize_in_place(targets, lambda);
    }
  }
  return rho;
}

ProbVector ideal_probs(const PureState& state) {
  std::vector<double> p;
  p.reserve(state.dim());
  for (const Complex& a : state.amplitudes()) p.push_back(std::norm(a));
  return ProbVector(clamp_and_normalize(std::move(p)));
}

ProbVector ideal_probs(const MixedState& state) {
  std::vector<double> p;
  p.reserve(state.dim());
  for (std::size_t i = 0; i < state.dim(); ++i) p.push_back(state(i, i).real());
  return ProbVector(clamp_and_normalize(std::move(p)));
}

ProbVector sample_shots(const ProbVector& probs, std::size_t shots, Rng& rng) {
  if (shots == 0) throw std::invalid_argument("sample_shots: shots must be >= 1");
  const auto p = probs.values();
  std::vector<double> cdf(p.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    acc += p[i];
    cdf[i] = acc;
  }
  // Index of the last outcome with positive mass absorbs the round-off gap.
  std::size_t last = p.size() - 1;
  while (last > 0 && p[last] == 0.0) --last;

  std::vector<std::size_t> counts(p.size(), 0);
  for (std::size_t s = 0; s < shots; ++s) {
    const double u = uniform01(rng) * acc;
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    std::size_t idx = static_cast<std::size_t>(it - cdf.begin());
    if (idx > last) idx = last;
    ++counts[idx];
  }
  std::vector<double> freq(p.size());
  const double inv = 1.0 / static_cast<double>(shots);
  for (std::size_t i = 0; i < p.size(); ++i) freq[i] = static_cast<double>(counts[i]) * inv;
  return ProbVector(std::move(freq));
}

ProbVector apply_readout_flips(const ProbVector& probs, std::span<const double> flips) {
  if (flips.empty()) return probs;
  if (static_cast<int>(flips.size()) != probs.num_qubits()) {
    throw std::invalid_argument("apply_readout_flips: one flip probability per qubit required");
  }
  std::vector<double> p(probs.values().begin(), probs.values().end());
  for (std::size_t q = 0; q < flips.size(); ++q) {
    const double f = flips[q];
    if (!(f >= 0.0 && f <= 1.0)) throw std::invalid_argument("readout flip probability outside [0, 1]");
    if (f == 0.0) continue;
    const std::size_t bit = std::size_t{1} << q;
    for (std::size_t s = 0; s < p.size(); ++s) {
      if (s & bit) continue;
      const double a = p[s];
      const double b = p[s | bit];
      p[s] = (1.0 - f) * a + f * b;
      p[s | bit] = f * a + (1.0 - f) * b;
    }
  }
  return ProbVector(clamp_and_normalize(std::move(p)));
}

}  // namespace qrc
