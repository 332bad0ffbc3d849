#include <map>

#include "blanc/error.hpp"
#include "blanc/masking.hpp"
#include "blanc/rng.hpp"
#include "blanc/text.hpp"
#include "doctest.h"
#include "synthetic.hpp"

using namespace blanc;
using Strings = std::vector<std::string>;
using Positions = std::vector<std::size_t>;

namespace {

TokenSequence plain_tokens(const Strings& words) { return ReferenceTokenizer().tokenize(words); }

}  // namespace

TEST_CASE("eligible_positions, word mode") {
  BlancParams p;
  CHECK(eligible_positions(Strings{"The", "quick", "brown", "fox"}, p) == Positions{2, 3});
  CHECK(eligible_positions(Strings{"a", "be", "cat"}, p).empty());
  // Length is measured without edge punctuation; punctuation words never count.
  CHECK(eligible_positions(Strings{"(dogs)", ",", "....", "cats"}, p) == Positions{1, 4});
  p.min_word_len = 1;
  CHECK(eligible_positions(Strings{"a", ".", "b"}, p) == Positions{1, 3});
}

TEST_CASE("eligible_positions, token mode admits composite words") {
  const ReferenceTokenizer tok(std::unordered_set<std::string>{"the", "fox"});
  const Strings words = {"the", "xyzq", "abc", "fox"};
  const TokenSequence seq = tok.tokenize(words);
  BlancParams p;
  CHECK(eligible_positions(words, seq, p) == Positions{2});
  p.mode = MaskMode::kToken;
  CHECK(eligible_positions(words, seq, p) == Positions{2, 3});
}

TEST_CASE("periodic_plans: one word per offset") {
  const Strings words = {"wolves", "howled", "loudly", "overnight"};
  BlancParams p;
  const auto plans = periodic_plans(words, plain_tokens(words), 0, p);
  REQUIRE(plans.size() == 4);
  for (int i = 0; i < 4; ++i) {
    CHECK(plans[i].offset == i + 1);
    CHECK(plans[i].positions == Positions{static_cast<std::size_t>(i + 1)});
    CHECK(plans[i].truth.at(i + 1) == words[i]);
  }
}

TEST_CASE("periodic_plans: hand-enumerated ten-word sentence") {
  const Strings words = {"a", "bbbb", "c", "d", "eeee", "f", "g", "hhhh", "i", "j"};
  BlancParams p;
  const auto eligible = eligible_positions(words, p);
  CHECK(eligible == Positions{2, 5, 8});
  const auto plans = periodic_plans(words, eligible, 3, 6);
  REQUIRE(plans.size() == 2);
  CHECK(plans[0].offset == 2);
  CHECK(plans[0].positions == Positions{2, 8});
  CHECK(plans[0].sentence_index == 3);
  CHECK(plans[1].offset == 5);
  CHECK(plans[1].positions == Positions{5});
  CHECK(periodic_plans(Strings{"a", "b"}, Positions{}, 0, 6).empty());
}

TEST_CASE("periodic_plans cover each eligible word exactly once") {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    Rng rng(seed);
    const std::string text = blanc::testing::random_text(seed, 1);
    const Strings words = split_words(text);
    BlancParams p;
    p.masking_period = 1 + static_cast<int>(rng.below(9));
    p.min_word_len = 1 + static_cast<int>(rng.below(6));
    const auto eligible = eligible_positions(words, p);
    const auto plans = periodic_plans(words, plain_tokens(words), 0, p);
    std::map<std::size_t, int> seen;
    for (const auto& plan : plans) {
      CHECK(plan.offset >= 1);
      CHECK(plan.offset <= p.masking_period);
      CHECK_FALSE(plan.positions.empty());
      for (std::size_t i = 0; i < plan.positions.size(); ++i) {
        const std::size_t pos = plan.positions[i];
        CHECK((static_cast<long>(pos) - plan.offset) % p.masking_period == 0);
        if (i > 0) CHECK(plan.positions[i - 1] < pos);
        ++seen[pos];
      }
    }
    CHECK(seen.size() == eligible.size());
    for (auto e : eligible) CHECK(seen[e] == 1);
  }
}

TEST_CASE("build_filler") {
  const auto five = plain_tokens({"one", "two", "three", "four", "five"});
  const auto filler = build_filler(five);
  CHECK(filler.tokens == Strings(5, "."));
  CHECK(filler.word_spans == five.word_spans);
  CHECK(build_filler(TokenSequence{}).empty());
  const ReferenceTokenizer tok(std::unordered_set<std::string>{"a"});
  const auto composite = tok.tokenize(Strings{"a", "xyzq"});
  CHECK(build_filler(composite).size() == composite.size());
}

TEST_CASE("apply_mask") {
  const auto seq = plain_tokens({"wolves", "howled", "loudly"});
  MaskingPlan plan;
  plan.positions = {2};
  const auto m = apply_mask(seq, plan);
  CHECK(m.input.tokens == Strings{"wolves", kMaskToken, "loudly"});
  // Targets are keyed by token index; word 2 is token 1.
  CHECK(m.targets == std::map<std::size_t, std::string>{{1, "howled"}});

  const ReferenceTokenizer tok(std::unordered_set<std::string>{"a", "b", "c"});
  const auto comp = tok.tokenize(Strings{"a", "b", "c", "xyzq"});
  plan.positions = {4};
  const auto m2 = apply_mask(comp, plan);
  CHECK(m2.input.tokens == Strings{"a", "b", "c", kMaskToken, kMaskToken});
  CHECK(m2.targets.size() == 2);
  CHECK(m2.targets.at(3) == "xy");
  CHECK(m2.targets.at(4) == "##zq");

  plan.positions = {};
  const auto m3 = apply_mask(seq, plan);
  CHECK(m3.input.tokens == seq.tokens);
  CHECK(m3.targets.empty());

  plan.positions = {4};
  CHECK_THROWS_AS(apply_mask(seq, plan), Error);
}

TEST_CASE("assemble_with_prefix truncates the prefix by whole words") {
  const ReferenceTokenizer tok(std::unordered_set<std::string>{"a", "b"});
  const auto prefix = tok.tokenize(Strings{"a", "xyzq", "b"});  // 4 tokens
  MaskingPlan plan;
  plan.positions = {1};
  const auto sentence = apply_mask(plain_tokens({"dogs", "bark"}), plan);

  const auto full = assemble_with_prefix(prefix, sentence, 64);
  REQUIRE(full);
  CHECK(full->input.tokens ==
        Strings{kClsToken, "a", "xy", "##zq", "b", kSepToken, kMaskToken, "bark", kSepToken});
  CHECK(full->targets.at(6) == "dogs");
  full->input.check();

  // Room for 3 prefix tokens: "b" is dropped, "xyzq" stays whole.
  const auto cut = assemble_with_prefix(prefix, sentence, 8);
  REQUIRE(cut);
  CHECK(cut->input.tokens == Strings{kClsToken, "a", "xy", "##zq", kSepToken, kMaskToken, "bark", kSepToken});
  // Room for 2: "xyzq" cannot be split, only "a" fits.
  const auto cut2 = assemble_with_prefix(prefix, sentence, 7);
  REQUIRE(cut2);
  CHECK(cut2->input.tokens == Strings{kClsToken, "a", kSepToken, kMaskToken, "bark", kSepToken});
  CHECK(cut2->targets.at(3) == "dogs");
  // Sentence plus markers alone.
  CHECK(assemble_with_prefix(prefix, sentence, 5));
  CHECK_FALSE(assemble_with_prefix(prefix, sentence, 4));

  const auto bare = assemble_bare(sentence, 4);
  REQUIRE(bare);
  CHECK(bare->input.tokens == Strings{kClsToken, kMaskToken, "bark", kSepToken});
  CHECK(bare->targets.at(1) == "dogs");
  CHECK_FALSE(assemble_bare(sentence, 3));
}

TEST_CASE("word_length ignores edge punctuation") {
  CHECK(word_length("\"wolves,\"") == 6);
  CHECK(word_length("...") == 0);
  CHECK(word_length("caf\xc3\xa9") == 4);
}
