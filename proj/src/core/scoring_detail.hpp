#ifndef BLANC_SCORING_DETAIL_HPP
#define BLANC_SCORING_DETAIL_HPP

#include "blanc/blanc_help.hpp"
#include "blanc/masking.hpp"

namespace blanc::detail {

/// Offset of the sentence's first token inside an assembled input; the
/// sentence is always followed by exactly one [SEP].
inline std::size_t sentence_shift(const MaskedSample& assembled,
                                  const TokenSequence& sentence) {
  return assembled.input.size() - sentence.size() - 1;
}

inline bool predicted(const Predictions& preds, std::size_t pos,
                      const std::string& truth) {
  auto it = preds.find(pos);
  return it != preds.end() && it->second == truth;
}

/// Adds the events of one plan: one per word in word mode (all sub-tokens
/// must be right), one per token in token mode.
inline void count_plan_events(const TokenSequence& sentence, const MaskingPlan& plan,
                              const Predictions& base, std::size_t base_shift,
                              const Predictions& assisted, std::size_t assisted_shift,
                              MaskMode mode, UnmaskingCounts& counts) {
  for (std::size_t p : plan.positions) {
    const WordSpan span = sentence.word_spans[p - 1];
    bool base_word = true;
    bool assisted_word = true;
    for (std::size_t t = span.begin; t < span.end; ++t) {
      const std::string& truth = sentence.tokens[t];
      const bool b = predicted(base, t + base_shift, truth);
      const bool a = predicted(assisted, t + assisted_shift, truth);
      if (mode == MaskMode::kToken) {
        counts.add(b, a);
      } else {
        base_word = base_word && b;
        assisted_word = assisted_word && a;
      }
    }
    if (mode == MaskMode::kWord) counts.add(base_word, assisted_word);
  }
}

}  // namespace blanc::detail

#endif  // BLANC_SCORING_DETAIL_HPP
