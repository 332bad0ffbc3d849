#ifndef BLANC_BLANC_HELP_HPP
#define BLANC_BLANC_HELP_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "blanc/corpus.hpp"
#include "blanc/lm_backend.hpp"
#include "blanc/params.hpp"

namespace blanc {

/// S_km: k is base (filler / untuned) success, m is summary-assisted success.
struct UnmaskingCounts {
  std::uint64_t s00 = 0;
  std::uint64_t s01 = 0;
  std::uint64_t s10 = 0;
  std::uint64_t s11 = 0;

  std::uint64_t total() const { return s00 + s01 + s10 + s11; }
  void add(bool base_ok, bool assisted_ok);
  UnmaskingCounts& operator+=(const UnmaskingCounts& o);
  bool operator==(const UnmaskingCounts&) const = default;
};

enum class Variant { kHelp, kTune };
std::string to_string(Variant v);

struct BlancScore {
  double value = 0.0;
  UnmaskingCounts counts;
  Variant variant = Variant::kHelp;
  BlancParams params;
  std::size_t guard_skips = 0;
  std::size_t overlength_skips = 0;
  // BLANC-tune only.
  std::uint64_t seed = 0;
  std::size_t tuning_samples = 0;
};

/// (S01 - S10) / S_total. Throws NoMaskableContentError when S_total == 0.
double blanc_from_counts(const UnmaskingCounts& counts);
/// (S11 + S01) / S_total
double accuracy_assisted(const UnmaskingCounts& counts);
/// (S11 + S10) / S_total
double accuracy_base(const UnmaskingCounts& counts);

struct GuardDecision {
  bool skip = false;
  std::vector<std::string> summary_sentences;  // what the model should see
};

/// Exact-copy detection compares sentences after trimming outer whitespace.
GuardDecision apply_guard(const std::string& sentence,
                          const std::vector<std::string>& summary_sentences,
                          GuardMode guard);

/// BLANC-help: for each sentence and periodic plan, unmask with the summary
/// and with an equal-length period filler in front of the sentence.
BlancScore score_help(const Document& document, const std::string& summary_text,
                      const BlancParams& params, const MaskedLm& backend);

}  // namespace blanc

#endif  // BLANC_BLANC_HELP_HPP
