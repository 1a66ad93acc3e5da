#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "qrc/error.hpp"
#include "qrc/levelio.hpp"
#include "qrc/metrics.hpp"
#include "qrc/random.hpp"

using namespace qrc;

namespace {

const std::string kData = QRC_DATA_DIR;

Level parse(const std::string& text) {
  std::istringstream in(text);
  return parse_level(in, "t.lvl");
}

ConstraintRules rules(const std::string& text, const Vocabulary& vocab) {
  std::istringstream in(text);
  return parse_rules(in, vocab, "t.rules");
}

std::string error_of(const std::string& text) {
  try {
    parse(text);
  } catch (const DataError& e) {
    return e.what();
  }
  return "";
}

std::filesystem::path temp(const std::string& name) { return std::filesystem::temp_directory_path() / name; }

}  // namespace

TEST_CASE("parse a small level") {
  const auto l = parse("# demo\n[vocabulary]\nground\npipeL\npipeR\n[tokens]\n0 1 2\n0  # trailing\n");
  CHECK(l.vocab.size() == 3);
  CHECK(l.tokens == std::vector<int>{0, 1, 2, 0});
  CHECK(l.vocab.find("pipeR") == 2);
  CHECK_FALSE(l.vocab.find("lava"));
}

TEST_CASE("level errors are located") {
  CHECK(error_of("[vocabulary]\na\nb\n[tokens]\n0 1\n1 2 0\n").starts_with("t.lvl:6:3:"));
  CHECK(error_of("[vocabulary]\na\nb\n[tokens]\n0 x\n").starts_with("t.lvl:5:3:"));
  CHECK(error_of("[vocabulary]\na\na\n[tokens]\n0\n").starts_with("t.lvl:3:1:"));
  CHECK(error_of("[vocabulary]\na b\n[tokens]\n0\n").starts_with("t.lvl:2:1:"));
  CHECK(error_of("0 1\n").starts_with("t.lvl:1:1:"));
  CHECK(error_of("[vocabulary]\na\n").find("missing [tokens]") != std::string::npos);
  CHECK(error_of("[vocabulary]\na\n[tokens]\n").find("empty token sequence") != std::string::npos);
  CHECK(error_of("[vocabulary]\na\n[tokens]\n-1\n").starts_with("t.lvl:4:1:"));
  CHECK_THROWS_AS(load_level("/nonexistent/level.lvl"), DataError);
}

TEST_CASE("shipped fixtures") {
  const auto smb = load_level(kData + "/smb_1-2.lvl");
  CHECK(smb.tokens.size() == 157);
  CHECK(smb.vocab.size() == 32);

  const auto obby = load_level(kData + "/roblox_obby.lvl");
  CHECK(obby.tokens.size() == 288);
  const auto r = load_rules(kData + "/roblox.rules", obby.vocab);
  REQUIRE(r.save_token);
  CHECK(r.ordered_groups.size() == 1);
  std::optional<std::size_t> last;
  for (std::size_t i = 0; i < obby.tokens.size(); ++i) {
    if (obby.tokens[i] != *r.save_token) continue;
    if (last) CHECK(i - *last == 16);
    last = i;
  }

  const auto s = load_rules(kData + "/smb.rules", smb.vocab);
  CHECK(s.must_follow.size() == 4);
  CHECK(s.ordered_groups.empty());
  CHECK(broken_transition_rate(smb.tokens, s).broken == 0);
}

TEST_CASE("rules parsing") {
  const auto l = parse("[vocabulary]\nground\npipeL\npipeR\nbutton\nhide\nball\nsave\n[tokens]\n0\n");
  const auto a = rules("follow pipeL pipeR\n", l.vocab);
  CHECK(a.must_follow == std::vector<std::pair<int, int>>{{1, 2}});
  CHECK(a.breakable == std::set<int>{1, 2});

  const auto empty = rules("# nothing\n\n", l.vocab);
  CHECK(empty.breakable.empty());
  CHECK(broken_transition_rate(std::vector<int>{1, 0, 2, 0}, empty).rate == 0.0);

  const auto b = rules("order button hide ball\nsave save\n", l.vocab);
  CHECK(b.ordered_groups.size() == 1);
  CHECK(b.save_token == 6);
  CHECK(b.breakable == std::set<int>{3, 4, 5});

  auto fails_at = [&](const std::string& text, const std::string& where) {
    try {
      rules(text, l.vocab);
    } catch (const DataError& e) {
      return std::string(e.what()).starts_with(where);
    }
    return false;
  };
  CHECK(fails_at("follow pipeL lava\n", "t.rules:1:14:"));
  CHECK(fails_at("\norder button hide\n", "t.rules:2:1:"));
  CHECK(fails_at("order button hide button\n", "t.rules:1:1:"));
  CHECK(fails_at("teleport ground\n", "t.rules:1:1:"));
  CHECK(fails_at("save save\nsave ground\n", "t.rules:2:1:"));
}

TEST_CASE("save and reload") {
  const auto smb = load_level(kData + "/smb_1-2.lvl");
  const auto path = temp("qrc_levelio_roundtrip.lvl");
  save_level(path, smb.vocab, smb.tokens);
  const auto back = load_level(path);
  CHECK(back.tokens == smb.tokens);
  CHECK(back.vocab.labels() == smb.vocab.labels());
  CHECK(back.vocab.hash() == smb.vocab.hash());

  CHECK_THROWS_AS(save_level(path, smb.vocab, std::vector<int>{}), DataError);
  CHECK_THROWS_AS(save_level(path, smb.vocab, std::vector<int>{0, 32}), DataError);
  std::filesystem::remove(path);
}

TEST_CASE("random levels round trip") {
  Rng rng(4);
  const auto path = temp("qrc_levelio_random.lvl");
  for (int trial = 0; trial < 20; ++trial) {
    const int f = 1 + static_cast<int>(uniform_index(rng, 40));
    std::vector<std::string> labels;
    for (int i = 0; i < f; ++i) labels.push_back("f" + std::to_string(i) + "_" + std::to_string(trial));
    const Vocabulary v(labels);
    std::vector<int> tokens(1 + uniform_index(rng, 100));
    for (int& t : tokens) t = static_cast<int>(uniform_index(rng, static_cast<std::size_t>(f)));
    save_level(path, v, tokens);
    const auto l = load_level(path);
    CHECK(l.vocab == v);
    CHECK(l.tokens == tokens);
  }
  std::filesystem::remove(path);
}

TEST_CASE("vocabulary hash") {
  const Vocabulary a({"x", "y"});
  CHECK(a.hash() == Vocabulary({"x", "y"}).hash());
  CHECK(a.hash() != Vocabulary({"y", "x"}).hash());
  CHECK(a.hash() != Vocabulary({"xy"}).hash());
  CHECK_THROWS_AS(Vocabulary({"a", ""}), DataError);
  CHECK_THROWS_AS(Vocabulary({"a#b"}), DataError);
  CHECK_THROWS_AS(Vocabulary({"a", "a"}), DataError);
}

TEST_CASE("check_tokens locates the offender") {
  try {
    check_tokens(std::vector<int>{0, 1, 9, 1}, 4);
    FAIL("expected throw");
  } catch (const std::out_of_range& e) {
    CHECK(std::string(e.what()).find("position 2") != std::string::npos);
  }
}
