#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "qrc/tokens.hpp"

namespace qrc {

/// Empirical token frequencies; generation ignores all context.
struct UnigramModel {
  std::vector<double> freqs;
};

/// First-order chain over observed bigrams. Rows of tokens that never had a
/// successor fall back to the unigram distribution.
struct MarkovModel {
  int vocab_size = 0;
  std::vector<double> transition;  // f x f, row-major
  std::vector<bool> has_successor;
  UnigramModel fallback;

  std::span<const double> row(int token) const {
    return std::span<const double>(transition).subspan(static_cast<std::size_t>(token) * vocab_size, vocab_size);
  }
};

UnigramModel fit_unigram(std::span<const int> tokens, int vocab_size);
MarkovModel fit_markov(std::span<const int> tokens, int vocab_size);

TokenSequence generate_unigram(const UnigramModel& model, std::size_t length, std::uint64_t seed);
/// Walks the chain from x0; x0 itself is not emitted.
TokenSequence generate_markov(const MarkovModel& model, std::size_t length, std::uint64_t seed, int x0);

}  // namespace qrc
