#include "blanc/params.hpp"

#include <cstdio>

#include "blanc/error.hpp"
#include "json.hpp"

namespace blanc {

void BlancParams::validate() const {
  if (masking_period < 1) throw Error(ErrorCode::kInvalidArgument, "M must be >= 1");
  if (min_word_len < 1) throw Error(ErrorCode::kInvalidArgument, "L_min must be >= 1");
  if (!(p_mask > 0.0 && p_mask <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "p_mask must lie in (0, 1]");
  }
  if (tune_passes < 1) throw Error(ErrorCode::kInvalidArgument, "passes must be >= 1");
}

int BlancParams::tune_inference_period() const {
  return static_cast<int>(1.0 / p_mask);
}

std::string to_string(MaskMode mode) { return mode == MaskMode::kWord ? "word" : "token"; }

std::string to_string(GuardMode guard) {
  switch (guard) {
    case GuardMode::kOff: return "off";
    case GuardMode::kSkipSentence: return "skip_sentence";
    case GuardMode::kDropCopy: return "drop_copy";
  }
  return "off";
}

MaskMode parse_mask_mode(const std::string& s) {
  if (s == "word") return MaskMode::kWord;
  if (s == "token") return MaskMode::kToken;
  throw Error(ErrorCode::kInvalidArgument, "mode must be 'word' or 'token', got '" + s + "'");
}

GuardMode parse_guard_mode(const std::string& s) {
  if (s == "off") return GuardMode::kOff;
  if (s == "skip_sentence") return GuardMode::kSkipSentence;
  if (s == "drop_copy") return GuardMode::kDropCopy;
  throw Error(ErrorCode::kInvalidArgument,
              "guard must be 'off', 'skip_sentence' or 'drop_copy', got '" + s + "'");
}

std::string BlancParams::to_json() const {
  nlohmann::json j;
  j["M"] = masking_period;
  j["Lmin"] = min_word_len;
  j["mode"] = to_string(mode);
  j["pmask"] = p_mask;
  j["passes"] = tune_passes;
  j["guard"] = to_string(guard);
  j["seed"] = seed;
  return j.dump();
}

BlancParams BlancParams::from_json(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("params: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::kParse, "params: expected an object");
  BlancParams p;
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "M") p.masking_period = v.get<int>();
      else if (key == "Lmin") p.min_word_len = v.get<int>();
      else if (key == "mode") p.mode = parse_mask_mode(v.get<std::string>());
      else if (key == "pmask") p.p_mask = v.get<double>();
      else if (key == "passes") p.tune_passes = v.get<int>();
      else if (key == "guard") p.guard = parse_guard_mode(v.get<std::string>());
      else if (key == "seed") p.seed = v.get<std::uint64_t>();
      else throw Error(ErrorCode::kParse, "params: unknown key '" + key + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("params: ") + e.what());
  }
  p.validate();
  return p;
}

std::string BlancParams::fingerprint() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : to_json()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace blanc
