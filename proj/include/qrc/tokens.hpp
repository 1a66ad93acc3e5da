#pragma once

#include <span>
#include <vector>

namespace qrc {

/// Token ids over a vocabulary {0..f-1}.
using TokenSequence = std::vector<int>;

/// Throws std::out_of_range locating the first token outside [0, vocab_size).
void check_tokens(std::span<const int> tokens, int vocab_size);

}  // namespace qrc
