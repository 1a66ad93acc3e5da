#pragma once

// Independent reference implementations shared by unit and acceptance tests.
// None of them call into the library code they check.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <vector>

#include "qrc/levelio.hpp"
#include "qrc/qsim.hpp"
#include "qrc/random.hpp"
#include "qrc/readout.hpp"

namespace oracle {

using C = std::complex<double>;
using Matrix = std::vector<std::vector<C>>;

inline Matrix identity(std::size_t n) {
  Matrix m(n, std::vector<C>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1.0;
  return m;
}

inline Matrix multiply(const Matrix& a, const Matrix& b) {
  const std::size_t n = a.size();
  Matrix out(n, std::vector<C>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) out[i][j] += a[i][k] * b[k][j];
  return out;
}

inline Matrix one_qubit(const qrc::Gate& g) {
  const double r = 1.0 / std::sqrt(2.0);
  switch (g.kind) {
    case qrc::GateKind::X: return {{0.0, 1.0}, {1.0, 0.0}};
    case qrc::GateKind::H: return {{r, r}, {r, -r}};
    case qrc::GateKind::RY: {
      const double c = std::cos(g.angle / 2), s = std::sin(g.angle / 2);
      return {{c, -s}, {s, c}};
    }
    default: return identity(2);
  }
}

/// Full 2^q x 2^q unitary of one gate, built entry by entry.
inline Matrix gate_matrix(const qrc::Gate& g, int q) {
  const std::size_t n = std::size_t{1} << q;
  Matrix m(n, std::vector<C>(n, 0.0));
  if (g.kind == qrc::GateKind::CNOT) {
    for (std::size_t c = 0; c < n; ++c) {
      std::size_t r = c;
      if ((c >> g.control) & 1) r ^= std::size_t{1} << g.target;
      m[r][c] = 1.0;
    }
    return m;
  }
  const Matrix u = one_qubit(g);
  const std::size_t mask = std::size_t{1} << g.target;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      if ((r & ~mask) == (c & ~mask)) m[r][c] = u[(r >> g.target) & 1][(c >> g.target) & 1];
  return m;
}

inline std::vector<C> run_dense(const qrc::Circuit& circuit, std::vector<C> psi) {
  Matrix u = identity(psi.size());
  for (const auto& g : circuit.gates) u = multiply(gate_matrix(g, circuit.num_qubits), u);
  std::vector<C> out(psi.size(), 0.0);
  for (std::size_t i = 0; i < psi.size(); ++i)
    for (std::size_t j = 0; j < psi.size(); ++j) out[i] += u[i][j] * psi[j];
  return out;
}

inline qrc::Circuit random_circuit(qrc::Rng& rng, int q, int gates) {
  qrc::Circuit c(q);
  for (int i = 0; i < gates; ++i) {
    const auto kind = q >= 2 ? qrc::uniform_index(rng, 4) : qrc::uniform_index(rng, 3) == 2 ? 3 : 0;
    const int t = static_cast<int>(qrc::uniform_index(rng, static_cast<std::size_t>(q)));
    switch (kind) {
      case 0: c.append(qrc::Gate::x(t)); break;
      case 1: c.append(qrc::Gate::h(t)); break;
      case 2: {
        int ctl = static_cast<int>(qrc::uniform_index(rng, static_cast<std::size_t>(q - 1)));
        if (ctl >= t) ++ctl;
        c.append(qrc::Gate::cnot(ctl, t));
        break;
      }
      default: c.append(qrc::Gate::ry(t, (qrc::uniform01(rng) * 4 - 2) * std::numbers::pi));
    }
  }
  return c;
}

inline std::vector<C> random_state(qrc::Rng& rng, std::size_t dim) {
  std::vector<C> v(dim);
  double norm = 0;
  for (auto& a : v) {
    a = C(qrc::uniform01(rng) - 0.5, qrc::uniform01(rng) - 0.5);
    norm += std::norm(a);
  }
  for (auto& a : v) a /= std::sqrt(norm);
  return v;
}

// ---- readout gradient oracle ----

/// Largest relative error between analytic gradients and central differences
/// (step 1e-5) on one random instance. Magnitudes below 1e-7 count as 1e-7.
inline double gradient_check(std::uint64_t seed) {
  qrc::Rng rng(seed);
  const int f = 2 + static_cast<int>(qrc::uniform_index(rng, 7));
  const int q = 1 + static_cast<int>(qrc::uniform_index(rng, 3));
  auto model = qrc::ReadoutModel::uniform_init(f, std::size_t{1} << q, 1.0, seed);
  for (auto& b : model.bias) b = qrc::uniform01(rng) * 2 - 1;
  std::vector<double> p(std::size_t{1} << q);
  double total = 0;
  for (auto& v : p) total += v = qrc::uniform01(rng);
  for (auto& v : p) v /= total;
  const int target = static_cast<int>(qrc::uniform_index(rng, static_cast<std::size_t>(f)));

  // Loss recomputed from scratch, without the library's forward pass.
  auto loss = [&](const qrc::ReadoutModel& m) {
    std::vector<double> z(static_cast<std::size_t>(f));
    for (int k = 0; k < f; ++k) {
      z[k] = m.use_bias ? m.bias[k] : 0.0;
      for (std::size_t s = 0; s < p.size(); ++s) z[k] += m.weights[k * p.size() + s] * p[s];
    }
    const double mx = *std::max_element(z.begin(), z.end());
    double sum = 0;
    for (double v : z) sum += std::exp(v - mx);
    return -(z[target] - mx - std::log(sum));
  };
  const auto g = qrc::loss_and_grad(model, p, target);
  const double h = 1e-5;
  double worst = 0;
  auto compare = [&](double analytic, double& param) {
    const double keep = param;
    param = keep + h;
    const double up = loss(model);
    param = keep - h;
    const double down = loss(model);
    param = keep;
    const double numeric = (up - down) / (2 * h);
    const double scale = std::max({std::abs(analytic), std::abs(numeric), 1e-7});
    worst = std::max(worst, std::abs(analytic - numeric) / scale);
  };
  for (std::size_t i = 0; i < model.weights.size(); ++i) compare(g.grad_weights[i], model.weights[i]);
  for (std::size_t i = 0; i < model.bias.size(); ++i) compare(g.grad_bias[i], model.bias[i]);
  return worst;
}

// ---- metric oracles: straight quadratic scans ----

inline double originality(const std::vector<int>& gen, const std::vector<int>& orig, std::size_t L) {
  std::size_t novel = 0;
  for (std::size_t i = 0; i + L <= gen.size(); ++i) {
    bool found = false;
    for (std::size_t j = 0; j + L <= orig.size() && !found; ++j) {
      bool same = true;
      for (std::size_t k = 0; k < L; ++k) same = same && gen[i + k] == orig[j + k];
      found = same;
    }
    if (!found) ++novel;
  }
  return static_cast<double>(novel) / static_cast<double>(orig.size() - L + 1);
}

struct Counts {
  std::size_t broken = 0, eligible = 0;
};

inline Counts broken_transitions(const std::vector<int>& seq, const qrc::ConstraintRules& rules) {
  std::set<int> breakable;
  for (auto [a, b] : rules.must_follow) breakable.insert({a, b});
  for (const auto& g : rules.ordered_groups) breakable.insert(g.begin(), g.end());
  Counts out;
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    const int a = seq[i], b = seq[i + 1];
    if (!breakable.count(a) && !breakable.count(b)) continue;
    ++out.eligible;
    bool a_has = false, a_ok = false, b_has = false, b_ok = false;
    for (auto [x, y] : rules.must_follow) {
      if (x == a) { a_has = true; a_ok = a_ok || y == b; }
      if (y == b) { b_has = true; b_ok = b_ok || x == a; }
    }
    if ((a_has && !a_ok) || (b_has && !b_ok)) ++out.broken;
  }
  return out;
}

inline Counts ordered_windows(const std::vector<int>& seq, const qrc::ConstraintRules& rules) {
  Counts out;
  for (const auto& g : rules.ordered_groups) {
    auto rank = [&](int t) -> int {
      for (int r = 0; r < 3; ++r)
        if (g[r] == t) return r;
      return -1;
    };
    std::size_t i = 0;
    while (i < seq.size()) {
      if (rank(seq[i]) < 0) { ++i; continue; }
      std::vector<int> ranks;
      std::size_t j = i;
      for (; j < seq.size(); ++j) {
        const int r = rank(seq[j]);
        if (r < 0) continue;
        ranks.push_back(r);
        if (r == 2) break;
      }
      ++out.eligible;
      bool ok = std::is_sorted(ranks.begin(), ranks.end());
      for (int r = 0; r < 3; ++r) ok = ok && std::count(ranks.begin(), ranks.end(), r) > 0;
      if (!ok) ++out.broken;
      i = j + 1;
    }
  }
  return out;
}

inline std::optional<std::pair<double, double>> save_gaps(const std::vector<int>& seq, int save) {
  std::vector<double> gaps;
  long last = -1;
  for (std::size_t i = 0; i < seq.size(); ++i)
    if (seq[i] == save) {
      if (last >= 0) gaps.push_back(static_cast<double>(static_cast<long>(i) - last));
      last = static_cast<long>(i);
    }
  if (gaps.empty()) return std::nullopt;
  double mean = 0;
  for (double g : gaps) mean += g;
  mean /= static_cast<double>(gaps.size());
  double var = 0;
  for (double g : gaps) var += (g - mean) * (g - mean);
  return std::make_pair(mean, std::sqrt(var / static_cast<double>(gaps.size())));
}

}  // namespace oracle
