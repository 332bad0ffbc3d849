#include <optional>

#include "blanc/error.hpp"
#include "blanc/params.hpp"
#include "doctest.h"

using namespace blanc;

TEST_CASE("defaults") {
  const BlancParams p;
  CHECK(p.masking_period == 6);
  CHECK(p.min_word_len == 4);
  CHECK(p.mode == MaskMode::kWord);
  CHECK(p.p_mask == 0.15);
  CHECK(p.tune_passes == 10);
  CHECK(p.guard == GuardMode::kOff);
  CHECK(p.tune_inference_period() == 6);
  p.validate();
}

TEST_CASE("inference period floors 1/p_mask") {
  BlancParams p;
  p.p_mask = 0.25;
  CHECK(p.tune_inference_period() == 4);
  p.p_mask = 0.3;
  CHECK(p.tune_inference_period() == 3);
  p.p_mask = 1.0;
  CHECK(p.tune_inference_period() == 1);
}

TEST_CASE("validation") {
  auto bad = [](auto mutate) {
    BlancParams p;
    mutate(p);
    CHECK_THROWS_AS(p.validate(), Error);
  };
  bad([](BlancParams& p) { p.masking_period = 0; });
  bad([](BlancParams& p) { p.min_word_len = 0; });
  bad([](BlancParams& p) { p.p_mask = 0.0; });
  bad([](BlancParams& p) { p.p_mask = 1.5; });
  bad([](BlancParams& p) { p.tune_passes = 0; });
}

TEST_CASE("json round trip and fingerprint") {
  BlancParams p;
  p.masking_period = 4;
  p.mode = MaskMode::kToken;
  p.guard = GuardMode::kDropCopy;
  p.seed = 18446744073709551615ULL;
  const auto text = p.to_json();
  CHECK(BlancParams::from_json(text) == p);
  CHECK(p.to_json() == text);
  CHECK(p.fingerprint().size() == 16);
  CHECK(p.fingerprint() == BlancParams::from_json(text).fingerprint());
  CHECK(p.fingerprint() != BlancParams{}.fingerprint());
  CHECK(BlancParams::from_json("{}") == BlancParams{});
  CHECK(BlancParams::from_json(R"({"M":3})").masking_period == 3);
}

TEST_CASE("json errors") {
  auto code = [](const std::string& text) -> std::optional<ErrorCode> {
    try {
      BlancParams::from_json(text);
    } catch (const Error& e) {
      return e.code();
    }
    return std::nullopt;
  };
  CHECK(code("{") == ErrorCode::kParse);
  CHECK(code("[]") == ErrorCode::kParse);
  CHECK(code(R"({"bogus":1})") == ErrorCode::kParse);
  CHECK(code(R"({"M":"six"})") == ErrorCode::kParse);
  CHECK(code(R"({"mode":"sentence"})").has_value());
  CHECK(code(R"({"M":0})") == ErrorCode::kInvalidArgument);
}

TEST_CASE("enum names") {
  CHECK(to_string(MaskMode::kToken) == "token");
  CHECK(to_string(GuardMode::kSkipSentence) == "skip_sentence");
  CHECK(parse_guard_mode("drop_copy") == GuardMode::kDropCopy);
  CHECK(parse_mask_mode("word") == MaskMode::kWord);
  CHECK_THROWS(parse_mask_mode("Word"));
}
