#ifndef BLANC_PARAMS_HPP
#define BLANC_PARAMS_HPP

#include <cstdint>
#include <string>

namespace blanc {

enum class MaskMode { kWord, kToken };

/// No-copy-pair guard. kSkipSentence drops document sentences that appear
/// verbatim in the summary; kDropCopy removes the copy from the summary for
/// that sentence only.
enum class GuardMode { kOff, kSkipSentence, kDropCopy };

struct BlancParams {
  int masking_period = 6;  // M
  int min_word_len = 4;    // L_min, in characters
  MaskMode mode = MaskMode::kWord;
  double p_mask = 0.15;    // tuning-set masking probability
  int tune_passes = 10;    // N
  GuardMode guard = GuardMode::kOff;
  std::uint64_t seed = 0;

  /// Throws kInvalidArgument on M < 1, L_min < 1, p_mask outside (0, 1] or
  /// N < 1.
  void validate() const;

  /// Masking period used at BLANC-tune inference: int(1 / p_mask).
  int tune_inference_period() const;

  /// Canonical JSON text (sorted keys), stable across runs.
  std::string to_json() const;
  static BlancParams from_json(const std::string& json_text);

  /// 16 hex digits; FNV-1a over to_json().
  std::string fingerprint() const;

  bool operator==(const BlancParams&) const = default;
};

std::string to_string(MaskMode mode);
std::string to_string(GuardMode guard);
MaskMode parse_mask_mode(const std::string& s);
GuardMode parse_guard_mode(const std::string& s);

}  // namespace blanc

#endif  // BLANC_PARAMS_HPP
