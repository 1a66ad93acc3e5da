#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "qrc/error.hpp"
#include "qrc/noise_profile.hpp"
#include "qrc/reservoir.hpp"

using namespace qrc;
using std::numbers::pi;

namespace {

ReservoirConfig ideal(int q, int f) {
  ReservoirConfig c;
  c.num_qubits = q;
  c.vocab_size = f;
  c.mode = FidelityMode::Ideal;
  c.shots = 0;
  return c;
}

}  // namespace

TEST_CASE("random block is deterministic and in range") {
  CHECK(build_random_block(7, 2, 5) == build_random_block(7, 2, 5));
  CHECK_FALSE(build_random_block(7, 4, 12) == build_random_block(8, 4, 12));
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto b = build_random_block(seed, 2, 1);
    REQUIRE(b.gates.size() == 1);
    CHECK(b.gates[0].target >= 0);
    CHECK(b.gates[0].target < 2);
    CHECK(b.gates[0].kind != GateKind::RY);
  }
  CHECK_THROWS_AS(build_random_block(1, 1, 4), std::invalid_argument);
  CHECK_THROWS_AS(build_random_block(1, 3, 0), std::invalid_argument);
}

TEST_CASE("random block gate kinds are uniform") {
  const auto b = build_random_block(123, 6, 10'000);
  std::array<double, 3> counts{};
  std::array<double, 6> targets{};
  for (const auto& g : b.gates) {
    counts[static_cast<std::size_t>(g.kind)] += 1;
    targets[static_cast<std::size_t>(g.target)] += 1;
    if (g.kind == GateKind::CNOT) CHECK(g.control != g.target);
  }
  double chi2 = 0;
  for (double c : counts) {
    CHECK(std::abs(c / 10'000 - 1.0 / 3) < 0.02);
    chi2 += (c - 10'000 / 3.0) * (c - 10'000 / 3.0) / (10'000 / 3.0);
  }
  CHECK(chi2 < 13.82);  // 2 dof, p = 0.001
  double chi2_t = 0;
  for (double t : targets) chi2_t += (t - 10'000 / 6.0) * (t - 10'000 / 6.0) / (10'000 / 6.0);
  CHECK(chi2_t < 20.52);  // 5 dof, p = 0.001
}

TEST_CASE("encode_input") {
  const auto cfg = ideal(6, 32);
  const auto a0 = encode_input(0, cfg);
  for (int i = 0; i < 5; ++i) CHECK(a0[i] == 0.0);
  CHECK(a0[5] == doctest::Approx(2 * pi / 33));
  const auto a31 = encode_input(31, cfg);
  for (int i = 0; i < 5; ++i) CHECK(a31[i] == doctest::Approx(pi));
  CHECK(a31[5] == doctest::Approx(2 * pi * 32 / 33));
  CHECK_THROWS_AS(encode_input(32, cfg), std::out_of_range);
  CHECK_THROWS_AS(encode_input(-1, cfg), std::out_of_range);

  // Injective even when the register is too small for all the bits.
  for (auto [q, f] : {std::pair{6, 32}, std::pair{4, 32}, std::pair{2, 7}, std::pair{8, 3}}) {
    std::set<std::vector<double>> seen;
    for (int x = 0; x < f; ++x) seen.insert(encode_input(x, ideal(q, f)));
    CHECK(seen.size() == static_cast<std::size_t>(f));
  }
}

TEST_CASE("encode_memory") {
  const auto cfg = ideal(3, 4);
  for (double a : encode_memory(ProbVector::uniform(3), cfg)) CHECK(a == doctest::Approx(pi / 2));
  for (double a : encode_memory(ProbVector::point_mass(3, 0), cfg)) CHECK(a == 0.0);
  for (double a : encode_memory(ProbVector::point_mass(3, 7), cfg)) CHECK(a == doctest::Approx(pi));
  // Marginal of qubit 0 is P(s odd).
  const auto m = encode_memory(ProbVector({0.1, 0.2, 0.3, 0.0, 0.0, 0.1, 0.0, 0.3}), cfg);
  CHECK(m[0] == doctest::Approx(pi * 0.6));
  CHECK(m[1] == doctest::Approx(pi * 0.6));
  CHECK(m[2] == doctest::Approx(pi * 0.4));
  CHECK_THROWS_AS(encode_memory(ProbVector::uniform(2), cfg), std::invalid_argument);
}

TEST_CASE("step circuit layout") {
  auto cfg = ideal(6, 32);
  cfg.random_block_len = 18;
  const Reservoir res(cfg);
  const auto c = build_step_circuit(5, ProbVector::uniform(6), res);
  CHECK(c.gates.size() == 40);
  CHECK(c == build_step_circuit(5, ProbVector::uniform(6), res));

  const auto d = build_step_circuit(5, ProbVector::point_mass(6, 3), res);
  for (std::size_t i = 0; i < c.gates.size(); ++i) {
    const bool memory_rotation = i >= 11 && i < 17;
    if (!memory_rotation) CHECK(c.gates[i] == d.gates[i]);
  }
  CHECK(c.gates[11].angle != d.gates[11].angle);

  // Default block length is 3q.
  CHECK(Reservoir(ideal(5, 8)).random_block().gates.size() == 15);
}

TEST_CASE("step in each fidelity mode") {
  auto cfg = ideal(3, 4);
  const Reservoir empty(cfg, Circuit(3));
  Rng rng(1);
  const std::vector<double> zeros(3, 0.0);
  auto c = embedding_block(zeros);
  c.append(embedding_block(zeros));
  CHECK(empty.execute(c, rng) == ProbVector::point_mass(3, 0));

  cfg.mode = FidelityMode::Shots;
  cfg.shots = 4000;
  const Reservoir shots(cfg);
  Rng a(9), b(9);
  const auto p = step(2, ProbVector::uniform(3), shots, a);
  CHECK(p == step(2, ProbVector::uniform(3), shots, b));
  for (double v : p.values()) CHECK(std::abs(v * 4000 - std::round(v * 4000)) < 1e-9);

  cfg.shots = 0;
  CHECK_THROWS_AS(Reservoir{cfg}, std::invalid_argument);
}

TEST_CASE("full depolarization on a CNOT chain is uniform") {
  auto cfg = ideal(4, 4);
  cfg.mode = FidelityMode::Noisy;
  cfg.noise.two_qubit_depol = 1.0;
  Circuit chain(4);
  chain.append(Gate::h(0));
  chain.append(Gate::ry(2, 0.4));
  for (int i = 0; i + 1 < 4; ++i) chain.append(Gate::cnot(i, i + 1));
  const Reservoir res(cfg, Circuit(4));
  Rng rng(1);
  const auto p = res.execute(chain, rng);
  for (double v : p.values()) CHECK(std::abs(v - 1.0 / 16) < 1e-9);
}

TEST_CASE("every step output is a valid distribution") {
  for (auto mode : {FidelityMode::Ideal, FidelityMode::Shots, FidelityMode::Noisy}) {
    auto cfg = ideal(4, 10);
    cfg.mode = mode;
    cfg.shots = mode == FidelityMode::Ideal ? 0 : 500;
    cfg.noise = NoiseSpec::depolarizing(0.05);
    const Reservoir res(cfg);
    Rng rng(4);
    ProbVector h = ProbVector::uniform(4);
    for (int t = 0; t < 20; ++t) {
      const auto p = step(t % 10, h, res, rng);
      CHECK(is_probability_vector(p.values()));
      h = p;
    }
  }
}

TEST_CASE("the default seed separates every token") {
  const Reservoir res(ideal(6, 32));
  CHECK(res.config().random_block_seed == 62);
  CHECK(token_separation(res) > 1e-6);
  // The default is the first seed reaching the best separation.
  const double best = token_separation(res);
  for (std::uint64_t s = 0; s < 62; ++s) {
    auto cfg = ideal(6, 32);
    cfg.random_block_seed = s;
    CHECK(token_separation(Reservoir(cfg)) < best);
  }
}

TEST_CASE("calibration profile parsing") {
  const auto n = parse_calibration_profile(
      R"({"two_qubit_depol": 0.02, "gate_depol": {"ry": 0.003, "cnot": 0.04}, "readout_flip": [0.01, 0.02]})");
  CHECK(n.two_qubit_depol == 0.02);
  CHECK(n.strength(GateKind::CNOT) == 0.04);
  CHECK(n.strength(GateKind::RY) == 0.003);
  CHECK(n.strength(GateKind::H) == 0.0);
  CHECK(n.readout_flip == std::vector<double>{0.01, 0.02});

  CHECK_THROWS_AS(parse_calibration_profile("{"), DataError);
  CHECK_THROWS_AS(parse_calibration_profile(R"({"two_qubit_depol": 2})"), DataError);
  CHECK_THROWS_AS(parse_calibration_profile(R"({"gate_depol": {"swap": 0.1}})"), DataError);
  CHECK_THROWS_AS(parse_calibration_profile(R"({"readout_flip": "x"})"), DataError);

  const auto shipped = load_calibration_profile(std::string(QRC_DATA_DIR) + "/calibration_example.json");
  CHECK(shipped.readout_flip.size() == 6);
  CHECK_NOTHROW(shipped.validate(6));
}
