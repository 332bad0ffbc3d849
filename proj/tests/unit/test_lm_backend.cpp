#include <functional>
#include <algorithm>

#include "blanc/blanc_tune.hpp"
#include "blanc/error.hpp"
#include "blanc/lm_backend.hpp"
#include "blanc/rng.hpp"
#include "doctest.h"

using namespace blanc;

namespace {

TokenSequence seq_of(const std::vector<std::string>& tokens) {
  TokenSequence s;
  s.tokens = tokens;
  for (std::size_t i = 0; i < tokens.size(); ++i) s.word_spans.push_back({i, i + 1});
  return s;
}

// Masks the given positions, recording the original tokens as targets.
MaskedSample masked(const std::vector<std::string>& tokens, std::vector<std::size_t> positions) {
  MaskedSample m;
  m.input = seq_of(tokens);
  for (auto p : positions) {
    m.targets[p] = m.input.tokens[p];
    m.corruption_kinds[p] = CorruptionKind::kMasked;
    m.input.tokens[p] = kMaskToken;
  }
  return m;
}

class NoTuning final : public MaskedLm {
 public:
  std::string model_id() const override { return "frozen"; }
  std::size_t max_input_len() const override { return 8; }
  bool deterministic() const override { return true; }
  const Tokenizer& tokenizer() const override { return tok_; }
  const std::vector<std::string>& vocabulary() const override { return default_replacement_vocabulary(); }
  bool supports_tuning() const override { return false; }

 protected:
  Predictions do_predict(const MaskedSample& s) const override {
    Predictions p;
    for (const auto& [pos, _] : s.targets) p[pos] = kUnkToken;
    p[999] = "rogue";  // never a target
    return p;
  }
  BackendHandle do_fine_tune(std::span<const MaskedSample>, int, std::uint64_t) const override {
    return nullptr;
  }

 private:
  ReferenceTokenizer tok_;
};

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::kInvalidArgument;
}

}  // namespace

TEST_CASE("copycat: unseen token is UNK") {
  auto be = make_reference_backend();
  const auto pred = be->predict_masked(masked({"wolves", "howled", "loudly", "overnight"}, {2}));
  CHECK(pred.at(2) == kUnkToken);
}

TEST_CASE("copycat: token present elsewhere in the input is recovered") {
  auto be = make_reference_backend();
  const auto pred = be->predict_masked(
      masked({"wolves", "howled", "at", "night", kSepToken, "wolves", "howled", "loudly", "overnight"}, {5}));
  CHECK(pred.at(5) == "wolves");
}

TEST_CASE("copycat: zero targets gives an empty map") {
  auto be = make_reference_backend();
  CHECK(be->predict_masked(masked({"a", "b"}, {})).empty());
}

TEST_CASE("copycat: memory and filler-prefixed repeats") {
  CHECK(make_reference_backend({"loudly"})->predict_masked(masked({"wolves", "loudly"}, {1})).at(1) ==
        "loudly");
  CHECK(make_reference_backend()->predict_masked(masked({"wolves", "loudly"}, {1})).at(1) == kUnkToken);
  // [CLS] . . [SEP] sentence [SEP] where the masked word repeats in the sentence.
  const auto pred = make_reference_backend()->predict_masked(
      masked({kClsToken, ".", ".", kSepToken, "dogs", "chase", "dogs", kSepToken}, {6}));
  CHECK(pred.at(6) == "dogs");
  // Two masked copies of one word do not reveal each other.
  const auto both = make_reference_backend()->predict_masked(masked({"dogs", "chase", "dogs"}, {0, 2}));
  CHECK(both.at(0) == kUnkToken);
  CHECK(both.at(2) == kUnkToken);
}

TEST_CASE("copycat: predictions do not depend on token order") {
  Rng rng(7);
  const std::vector<std::string> lexicon = {"alpha", "beta", "gamma", "delta", "eps", "zeta"};
  auto be = make_reference_backend({"gamma"});
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::string> tokens;
    const std::size_t n = 2 + rng.below(12);
    for (std::size_t i = 0; i < n; ++i) tokens.push_back(lexicon[rng.below(lexicon.size())]);
    std::vector<std::size_t> targets;
    for (std::size_t i = 0; i < n; ++i) {
      if (rng.below(3) == 0) targets.push_back(i);
    }
    const auto base = be->predict_masked(masked(tokens, targets));

    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    rng.shuffle(std::span<std::size_t>(perm));
    std::vector<std::string> shuffled(n);
    std::vector<std::size_t> moved;
    for (std::size_t i = 0; i < n; ++i) shuffled[perm[i]] = tokens[i];
    for (auto t : targets) moved.push_back(perm[t]);
    const auto again = be->predict_masked(masked(shuffled, moved));
    for (auto t : targets) CHECK(base.at(t) == again.at(perm[t]));
  }
}

TEST_CASE("fine_tune on a summary tuning set fills memory with its eligible words") {
  auto be = make_reference_backend();
  BlancParams params;
  const TuningSet set = build_tuning_set("wolves howled at night", params, *be, 3);
  const auto samples = set.masked_samples();
  auto tuned = be->fine_tune(samples, 1, 3);
  const auto* ref = dynamic_cast<const ReferenceBackend*>(tuned.get());
  REQUIRE(ref != nullptr);
  CHECK(ref->memory() == std::set<std::string>{"wolves", "howled", "night"});
  // The base handle is untouched.
  CHECK(dynamic_cast<const ReferenceBackend*>(be.get())->memory().empty());
  // Same inputs, same result.
  auto again = be->fine_tune(samples, 1, 3);
  CHECK(dynamic_cast<const ReferenceBackend*>(again.get())->memory() == ref->memory());
}

TEST_CASE("fine_tune and predict preconditions") {
  auto be = make_reference_backend();
  CHECK(code_of([&] { be->fine_tune({}, 1, 0); }) == ErrorCode::kInvalidArgument);
  const std::vector<MaskedSample> one = {masked({"a", "b"}, {0})};
  CHECK(code_of([&] { be->fine_tune(one, 0, 0); }) == ErrorCode::kInvalidArgument);

  NoTuning frozen;
  CHECK(code_of([&] { frozen.fine_tune(one, 1, 0); }) == ErrorCode::kCapability);
  CHECK(code_of([&] { frozen.predict_masked(masked({"a"}, {0})); }) == ErrorCode::kBackend);
  CHECK(code_of([&] { frozen.predict_masked(masked(std::vector<std::string>(9, "a"), {0})); }) ==
        ErrorCode::kLength);

  auto tight = make_reference_backend({}, {4, std::nullopt});
  CHECK(code_of([&] { tight->predict_masked(masked({"a", "b", "c", "d", "e"}, {0})); }) ==
        ErrorCode::kLength);
  MaskedSample bad = masked({"a", "b"}, {});
  bad.targets[5] = "x";
  CHECK(code_of([&] { be->predict_masked(bad); }) == ErrorCode::kValidation);
}

TEST_CASE("reference tokenizer") {
  ReferenceTokenizer plain;
  const std::vector<std::string> words = {"Wolves", "HOWLED", "."};
  const auto seq = plain.tokenize(words);
  CHECK(seq.tokens == std::vector<std::string>{"wolves", "howled", "."});
  CHECK(seq.word_spans.size() == 3);
  seq.check();

  ReferenceTokenizer split(std::unordered_set<std::string>{"the", "fox"});
  CHECK(split.word_pieces("fox") == std::vector<std::string>{"fox"});
  CHECK(split.word_pieces("xyzq") == std::vector<std::string>{"xy", "##zq"});
  CHECK(split.word_pieces("abc") == std::vector<std::string>{"ab", "##c"});
  CHECK(split.word_pieces("a") == std::vector<std::string>{"a"});
  const std::vector<std::string> w2 = {"the", "xyzq", "fox"};
  const auto s2 = split.tokenize(w2);
  CHECK(s2.tokens == std::vector<std::string>{"the", "xy", "##zq", "fox"});
  CHECK(s2.word_spans[1] == WordSpan{1, 3});
  s2.check();
}

TEST_CASE("TokenSequence::check rejects gaps") {
  TokenSequence s = seq_of({"a", "b"});
  s.word_spans[1] = {2, 3};
  CHECK(code_of([&] { s.check(); }) == ErrorCode::kValidation);
}

TEST_CASE("backend registry") {
  CHECK(make_backend("reference")->model_id() == "reference");
  CHECK(make_backend("reference", 64)->max_input_len() == 64);
  CHECK(code_of([] { make_backend("mlm:bert-base-uncased"); }) == ErrorCode::kBackend);
  CHECK(code_of([] { make_backend("nonsense"); }) == ErrorCode::kBackend);
  register_backend_factory("fake", [](const std::string& model, std::size_t len) {
    CHECK(model == "tiny");
    return make_reference_backend({}, {len, std::nullopt});
  });
  CHECK(make_backend("fake:tiny", 32)->max_input_len() == 32);
  CHECK(is_sentinel(kMaskToken));
  CHECK_FALSE(is_sentinel("mask"));
  CHECK(std::none_of(default_replacement_vocabulary().begin(), default_replacement_vocabulary().end(),
                     [](const std::string& t) { return is_sentinel(t); }));
}
