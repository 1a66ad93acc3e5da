#include <doctest.h>

#include <set>

#include "qrc/baselines.hpp"
#include "qrc/levelio.hpp"
#include "qrc/metrics.hpp"
#include "qrc/random.hpp"

using namespace qrc;

namespace {

const std::string kData = QRC_DATA_DIR;

// Expected unigram originality on the SMB fixture,
// 1 - sum over distinct original L-grams of prod freq, from tools/make_fixtures.py.
constexpr double kUnigramExpectedL5 = 0.999708115368;
constexpr double kUnigramExpectedL10 = 0.999999999677;

}  // namespace

TEST_CASE("fitting") {
  const auto u = fit_unigram(std::vector<int>{0, 0, 1, 0}, 2);
  CHECK(u.freqs == std::vector<double>{0.75, 0.25});

  const auto m = fit_markov(std::vector<int>{0, 1, 0, 1}, 2);
  CHECK(m.row(0)[1] == 1.0);
  CHECK(m.row(1)[0] == 1.0);

  // Token 2 only appears last: its row falls back to the unigram.
  const auto d = fit_markov(std::vector<int>{0, 1, 0, 2}, 3);
  CHECK_FALSE(d.has_successor[2]);
  CHECK(d.row(2)[0] == 0.5);
  CHECK(d.row(2)[1] == 0.25);
  CHECK(d.row(2)[2] == 0.25);

  CHECK_THROWS(fit_unigram(std::vector<int>{}, 2));
  CHECK_THROWS(fit_markov(std::vector<int>{1}, 2));
  CHECK_THROWS(fit_unigram(std::vector<int>{0, 3}, 2));
}

TEST_CASE("markov output alternates on an alternating level") {
  std::vector<int> t;
  for (int i = 0; i < 30; ++i) t.push_back(i % 2);
  const auto m = fit_markov(t, 2);
  const auto g = generate_markov(m, 50, 3, 0);
  REQUIRE(g.size() == 50);
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(g[i] == static_cast<int>((i + 1) % 2));
}

TEST_CASE("generation is deterministic per seed") {
  const auto level = load_level(kData + "/smb_1-2.lvl");
  const auto u = fit_unigram(level.tokens, 32);
  const auto m = fit_markov(level.tokens, 32);
  CHECK(generate_unigram(u, 157, 5) == generate_unigram(u, 157, 5));
  CHECK(generate_unigram(u, 157, 5) != generate_unigram(u, 157, 6));
  CHECK(generate_markov(m, 157, 5, 0) == generate_markov(m, 157, 5, 0));
  CHECK_THROWS(generate_markov(m, 10, 1, 32));
}

TEST_CASE("unigram frequencies concentrate on the training frequencies") {
  const auto level = load_level(kData + "/smb_1-2.lvl");
  const auto u = fit_unigram(level.tokens, 32);
  std::vector<double> counts(32, 0.0);
  for (std::uint64_t v = 0; v < 100; ++v)
    for (int t : generate_unigram(u, 157, mix_seed(0, v))) counts[t] += 1;
  double tv = 0;
  for (int k = 0; k < 32; ++k) tv += std::abs(counts[k] / (100.0 * 157) - u.freqs[k]);
  CHECK(tv / 2 < 0.03);
}

TEST_CASE("unigram originality matches the closed-form expectation") {
  const auto level = load_level(kData + "/smb_1-2.lvl");
  const auto u = fit_unigram(level.tokens, 32);
  std::vector<TokenSequence> variants;
  for (std::uint64_t v = 0; v < 100; ++v) variants.push_back(generate_unigram(u, 157, mix_seed(0, v)));
  const auto l5 = mean_originality(variants, level.tokens, 5);
  CHECK(l5.mean > 0.9);
  CHECK(std::abs(l5.mean - kUnigramExpectedL5) < 2e-3);
  CHECK(std::abs(mean_originality(variants, level.tokens, 10).mean - kUnigramExpectedL10) < 1e-6);
}

TEST_CASE("markov never leaves the training bigrams") {
  const auto level = load_level(kData + "/smb_1-2.lvl");
  const auto rules = load_rules(kData + "/smb.rules", level.vocab);
  const auto m = fit_markov(level.tokens, 32);
  std::vector<TokenSequence> variants;
  for (std::uint64_t v = 0; v < 100; ++v) variants.push_back(generate_markov(m, 157, mix_seed(0, v), level.tokens[0]));
  CHECK(mean_originality(variants, level.tokens, 2).mean == 0.0);
  for (const auto& v : variants) CHECK(broken_transition_rate(v, rules).broken == 0);
}

TEST_CASE("markov closure on random levels without dead ends") {
  // The zero law only holds when no row needs the unigram fallback, i.e. the
  // last training token also occurs earlier.
  Rng rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const int f = 2 + static_cast<int>(uniform_index(rng, 7));
    std::vector<int> t(2 + uniform_index(rng, 49));
    for (int& x : t) x = static_cast<int>(uniform_index(rng, static_cast<std::size_t>(f)));
    t.back() = t.front();
    std::set<std::pair<int, int>> bigrams;
    for (std::size_t i = 0; i + 1 < t.size(); ++i) bigrams.insert({t[i], t[i + 1]});
    const auto m = fit_markov(t, f);
    const auto g = generate_markov(m, 60, static_cast<std::uint64_t>(trial), t.front());
    CHECK(bigrams.count({t.front(), g[0]}) == 1);
    for (std::size_t i = 0; i + 1 < g.size(); ++i) REQUIRE(bigrams.count({g[i], g[i + 1]}) == 1);
    CHECK(originality_rate(g, t, 2) == 0.0);
  }
}
