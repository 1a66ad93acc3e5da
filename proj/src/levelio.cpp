#include "qrc/levelio.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "qrc/error.hpp"

namespace qrc {

void check_tokens(std::span<const int> tokens, int vocab_size) {
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i] < 0 || tokens[i] >= vocab_size) {
      throw std::out_of_range("token " + std::to_string(tokens[i]) + " at position " + std::to_string(i) +
                              " outside vocabulary of size " + std::to_string(vocab_size));
    }
  }
}

namespace {

std::string trim(const std::string& s) {
  auto not_space = [](unsigned char c) { return !std::isspace(c); };
  auto b = std::find_if(s.begin(), s.end(), not_space);
  auto e = std::find_if(s.rbegin(), s.rend(), not_space).base();
  return b < e ? std::string(b, e) : std::string();
}

std::string strip_comment(const std::string& line) {
  const auto pos = line.find('#');
  return trim(pos == std::string::npos ? line : line.substr(0, pos));
}

[[noreturn]] void fail(const std::string& source, std::size_t line, std::size_t col, const std::string& what) {
  throw DataError(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + what);
}

std::vector<std::pair<std::string, std::size_t>> split_words(const std::string& line) {
  std::vector<std::pair<std::string, std::size_t>> words;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) words.emplace_back(line.substr(start, i - start), start + 1);
  }
  return words;
}

std::ifstream open_input(const std::filesystem::path& path, const char* what) {
  std::ifstream in(path);
  if (!in) throw DataError(std::string("cannot open ") + what + " " + path.string());
  return in;
}

}  // namespace

Vocabulary::Vocabulary(std::vector<std::string> labels) : labels_(std::move(labels)) {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    const std::string& l = labels_[i];
    if (l.empty()) throw DataError("vocabulary label " + std::to_string(i) + " is empty");
    if (std::any_of(l.begin(), l.end(), [](unsigned char c) { return std::isspace(c) || c == '#'; })) {
      throw DataError("vocabulary label '" + l + "' contains whitespace or '#'");
    }
    if (!index_.emplace(l, static_cast<int>(i)).second) throw DataError("duplicate vocabulary label '" + l + "'");
  }
}

std::optional<int> Vocabulary::find(const std::string& label) const {
  const auto it = index_.find(label);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::uint64_t Vocabulary::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&h](unsigned char c) {
    h ^= c;
    h *= 0x100000001b3ULL;
  };
  for (const std::string& l : labels_) {
    for (char c : l) feed(static_cast<unsigned char>(c));
    feed('\n');
  }
  return h;
}

Level parse_level(std::istream& in, const std::string& source) {
  enum class Section { None, Vocabulary, Tokens } section = Section::None;
  std::vector<std::string> labels;
  std::vector<std::size_t> label_lines;
  struct Located { int value; std::size_t line, col; };
  std::vector<Located> raw_tokens;
  bool saw_vocab = false, saw_tokens = false;

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string content = strip_comment(line);
    if (content.empty()) continue;
    if (content == "[vocabulary]") {
      if (saw_vocab) fail(source, lineno, 1, "duplicate [vocabulary] section");
      saw_vocab = true;
      section = Section::Vocabulary;
      continue;
    }
    if (content == "[tokens]") {
      if (saw_tokens) fail(source, lineno, 1, "duplicate [tokens] section");
      saw_tokens = true;
      section = Section::Tokens;
      continue;
    }
    switch (section) {
      case Section::None:
        fail(source, lineno, 1, "content before any section header");
      case Section::Vocabulary:
        if (split_words(content).size() != 1) fail(source, lineno, 1, "vocabulary label must be a single word");
        labels.push_back(content);
        label_lines.push_back(lineno);
        break;
      case Section::Tokens:
        for (const auto& [word, col] : split_words(line.substr(0, line.find('#')))) {
          int value = 0;
          const auto [ptr, ec] = std::from_chars(word.data(), word.data() + word.size(), value);
          if (ec != std::errc() || ptr != word.data() + word.size()) {
            fail(source, lineno, col, "'" + word + "' is not a token id");
          }
          raw_tokens.push_back({value, lineno, col});
        }
        break;
    }
  }
  if (!saw_vocab) throw DataError(source + ": missing [vocabulary] section");
  if (!saw_tokens) throw DataError(source + ": missing [tokens] section");

  for (std::size_t i = 0; i < labels.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (labels[j] == labels[i]) fail(source, label_lines[i], 1, "duplicate vocabulary label '" + labels[i] + "'");
    }
  }
  Level level{Vocabulary(std::move(labels)), {}};
  if (level.vocab.size() == 0) throw DataError(source + ": empty vocabulary");
  level.tokens.reserve(raw_tokens.size());
  for (const Located& t : raw_tokens) {
    if (t.value < 0 || t.value >= level.vocab.size()) {
      fail(source, t.line, t.col,
           "token " + std::to_string(t.value) + " outside vocabulary of size " + std::to_string(level.vocab.size()));
    }
    level.tokens.push_back(t.value);
  }
  if (level.tokens.empty()) throw DataError(source + ": empty token sequence");
  return level;
}

Level load_level(const std::filesystem::path& path) {
  auto in = open_input(path, "level file");
  return parse_level(in, path.string());
}

void save_level(const std::filesystem::path& path, const Vocabulary& vocab, std::span<const int> tokens) {
  if (tokens.empty()) throw DataError("refusing to save an empty token sequence");
  try {
    check_tokens(tokens, vocab.size());
  } catch (const std::out_of_range& e) {
    throw DataError(e.what());
  }
  std::ostringstream out;
  out << "[vocabulary]\n";
  for (const std::string& l : vocab.labels()) out << l << '\n';
  out << "[tokens]\n";
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    out << tokens[i] << ((i + 1) % 16 == 0 || i + 1 == tokens.size() ? '\n' : ' ');
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw DataError("cannot open " + path.string() + " for writing");
  file << out.str();
  if (!file) throw DataError("failed writing level file " + path.string());
}

void ConstraintRules::finalize(int vocab_size) {
  breakable.clear();
  auto check = [vocab_size](int t) {
    if (t < 0 || t >= vocab_size) throw DataError("rule token " + std::to_string(t) + " outside vocabulary");
  };
  for (const auto& [a, b] : must_follow) {
    check(a);
    check(b);
    breakable.insert(a);
    breakable.insert(b);
  }
  for (const auto& g : ordered_groups) {
    for (int t : g) {
      check(t);
      breakable.insert(t);
    }
    if (g[0] == g[1] || g[1] == g[2] || g[0] == g[2]) throw DataError("ordered group repeats a token");
  }
  if (save_token) check(*save_token);
}

ConstraintRules parse_rules(std::istream& in, const Vocabulary& vocab, const std::string& source) {
  ConstraintRules rules;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto words = split_words(line.substr(0, line.find('#')));
    if (words.empty()) continue;
    const std::string& directive = words[0].first;

    auto resolve = [&](std::size_t i) {
      const auto id = vocab.find(words[i].first);
      if (!id) fail(source, lineno, words[i].second, "unknown label '" + words[i].first + "'");
      return *id;
    };
    auto expect_args = [&](std::size_t n) {
      if (words.size() != n + 1) {
        fail(source, lineno, 1, "'" + directive + "' takes " + std::to_string(n) + " label(s), got " +
                                    std::to_string(words.size() - 1));
      }
    };

    if (directive == "follow") {
      expect_args(2);
      rules.must_follow.emplace_back(resolve(1), resolve(2));
    } else if (directive == "order") {
      expect_args(3);
      const std::array<int, 3> group{resolve(1), resolve(2), resolve(3)};
      if (group[0] == group[1] || group[1] == group[2] || group[0] == group[2]) {
        fail(source, lineno, 1, "ordered group must name three distinct labels");
      }
      rules.ordered_groups.push_back(group);
    } else if (directive == "save") {
      expect_args(1);
      if (rules.save_token) fail(source, lineno, 1, "save token declared twice");
      rules.save_token = resolve(1);
    } else {
      fail(source, lineno, words[0].second, "unknown directive '" + directive + "'");
    }
  }
  rules.finalize(vocab.size());
  return rules;
}

ConstraintRules load_rules(const std::filesystem::path& path, const Vocabulary& vocab) {
  auto in = open_input(path, "rules file");
  return parse_rules(in, vocab, path.string());
}

}  // namespace qrc
