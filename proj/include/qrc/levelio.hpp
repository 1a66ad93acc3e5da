#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qrc/tokens.hpp"

namespace qrc {

/// Ordered, unique feature labels; a token id is the label's position.
/// Labels are non-empty and contain no whitespace.
class Vocabulary {
 public:
  Vocabulary() = default;
  /// Throws DataError on empty, whitespace-bearing or duplicate labels.
  explicit Vocabulary(std::vector<std::string> labels);

  int size() const { return static_cast<int>(labels_.size()); }
  const std::string& label(int id) const { return labels_.at(static_cast<std::size_t>(id)); }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<int> find(const std::string& label) const;

  /// FNV-1a 64 over the labels, each terminated by '\n'.
  std::uint64_t hash() const;

  friend bool operator==(const Vocabulary& a, const Vocabulary& b) { return a.labels_ == b.labels_; }

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, int> index_;
};

struct Level {
  Vocabulary vocab;
  TokenSequence tokens;
};

// Level file:
//
//   # comments and blank lines are ignored
//   [vocabulary]
//   ground
//   pipe_left
//   [tokens]
//   0 1 2 0
//
// Tokens are whitespace-separated decimal ids and may span lines.
Level parse_level(std::istream& in, const std::string& source = "<input>");
Level load_level(const std::filesystem::path& path);
/// Rejects empty token lists and out-of-range tokens.
void save_level(const std::filesystem::path& path, const Vocabulary& vocab, std::span<const int> tokens);

struct ConstraintRules {
  std::vector<std::pair<int, int>> must_follow;
  std::vector<std::array<int, 3>> ordered_groups;
  std::optional<int> save_token;
  std::set<int> breakable;  // every token named by must_follow or ordered_groups

  bool is_breakable(int token) const { return breakable.count(token) != 0; }
  /// Recomputes `breakable` and checks every token against `vocab_size`.
  void finalize(int vocab_size);
};

// Rules file, one directive per line, labels resolved against the vocabulary:
//
//   follow pipe_left pipe_right        # pipe_left must be immediately followed by pipe_right
//   order button hiding_spot rolling_ball
//   save save_point
ConstraintRules parse_rules(std::istream& in, const Vocabulary& vocab, const std::string& source = "<input>");
ConstraintRules load_rules(const std::filesystem::path& path, const Vocabulary& vocab);

}  // namespace qrc
