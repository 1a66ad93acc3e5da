#include "qrc/baselines.hpp"

#include <stdexcept>

#include "qrc/random.hpp"

namespace qrc {

UnigramModel fit_unigram(std::span<const int> tokens, int vocab_size) {
  if (tokens.empty()) throw std::invalid_argument("fit_unigram: empty sequence");
  check_tokens(tokens, vocab_size);
  std::vector<double> counts(static_cast<std::size_t>(vocab_size), 0.0);
  for (int t : tokens) counts[static_cast<std::size_t>(t)] += 1.0;
  for (double& c : counts) c /= static_cast<double>(tokens.size());
  return {std::move(counts)};
}

MarkovModel fit_markov(std::span<const int> tokens, int vocab_size) {
  if (tokens.size() < 2) throw std::invalid_argument("fit_markov: need at least 2 tokens");
  MarkovModel m;
  m.vocab_size = vocab_size;
  m.fallback = fit_unigram(tokens, vocab_size);
  const auto f = static_cast<std::size_t>(vocab_size);
  std::vector<double> counts(f * f, 0.0);
  std::vector<double> row_totals(f, 0.0);
  for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
    const auto a = static_cast<std::size_t>(tokens[i]);
    const auto b = static_cast<std::size_t>(tokens[i + 1]);
    counts[a * f + b] += 1.0;
    row_totals[a] += 1.0;
  }
  m.has_successor.assign(f, false);
  m.transition.assign(f * f, 0.0);
  for (std::size_t a = 0; a < f; ++a) {
    if (row_totals[a] == 0.0) {
      for (std::size_t b = 0; b < f; ++b) m.transition[a * f + b] = m.fallback.freqs[b];
      continue;
    }
    m.has_successor[a] = true;
    for (std::size_t b = 0; b < f; ++b) m.transition[a * f + b] = counts[a * f + b] / row_totals[a];
  }
  return m;
}

TokenSequence generate_unigram(const UnigramModel& model, std::size_t length, std::uint64_t seed) {
  Rng rng(seed);
  TokenSequence out(length);
  for (int& t : out) t = static_cast<int>(sample_categorical(model.freqs, rng));
  return out;
}

TokenSequence generate_markov(const MarkovModel& model, std::size_t length, std::uint64_t seed, int x0) {
  if (x0 < 0 || x0 >= model.vocab_size) throw std::out_of_range("generate_markov: x0 outside vocabulary");
  Rng rng(seed);
  TokenSequence out(length);
  int x = x0;
  for (int& t : out) {
    x = static_cast<int>(sample_categorical(model.row(x), rng));
    t = x;
  }
  return out;
}

}  // namespace qrc
