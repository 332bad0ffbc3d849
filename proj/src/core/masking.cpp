#include "blanc/masking.hpp"

#include "blanc/error.hpp"
#include "blanc/text.hpp"

namespace blanc {

std::size_t word_length(const std::string& word) {
  return utf8_length(strip_punct(word));
}

std::vector<std::size_t> eligible_positions(std::span<const std::string> words,
                                            const TokenSequence& tokens,
                                            const BlancParams& params) {
  const bool token_mode = params.mode == MaskMode::kToken;
  if (token_mode && tokens.word_spans.size() != words.size()) {
    throw Error(ErrorCode::kValidation, "token sequence does not match the word list");
  }
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    const bool long_enough =
        word_length(words[i]) >= static_cast<std::size_t>(params.min_word_len);
    const bool composite = token_mode && tokens.word_spans[i].size() >= 2;
    if (long_enough || composite) out.push_back(i + 1);
  }
  return out;
}

std::vector<std::size_t> eligible_positions(std::span<const std::string> words,
                                            const BlancParams& params) {
  BlancParams word_mode = params;
  word_mode.mode = MaskMode::kWord;
  return eligible_positions(words, TokenSequence{}, word_mode);
}

std::vector<MaskingPlan> periodic_plans(std::span<const std::string> words,
                                        std::span<const std::size_t> eligible,
                                        std::size_t sentence_index, int period) {
  if (period < 1) throw Error(ErrorCode::kInvalidArgument, "masking period must be >= 1");
  std::vector<MaskingPlan> plans;
  for (int offset = 1; offset <= period; ++offset) {
    MaskingPlan plan;
    plan.sentence_index = sentence_index;
    plan.offset = offset;
    for (std::size_t p : eligible) {
      if (p == 0 || p > words.size()) {
        throw Error(ErrorCode::kValidation, "eligible position outside the sentence");
      }
      const auto diff = static_cast<long long>(p) - offset;
      if (diff % period == 0) {
        plan.positions.push_back(p);
        plan.truth[p] = words[p - 1];
      }
    }
    if (!plan.positions.empty()) plans.push_back(std::move(plan));
  }
  return plans;
}

std::vector<MaskingPlan> periodic_plans(std::span<const std::string> words,
                                        const TokenSequence& tokens,
                                        std::size_t sentence_index,
                                        const BlancParams& params) {
  const auto eligible = eligible_positions(words, tokens, params);
  return periodic_plans(words, eligible, sentence_index, params.masking_period);
}

TokenSequence build_filler(const TokenSequence& summary_tokens) {
  TokenSequence filler;
  filler.tokens.assign(summary_tokens.tokens.size(), ".");
  filler.word_spans = summary_tokens.word_spans;
  return filler;
}

MaskedSample apply_mask(const TokenSequence& seq, const MaskingPlan& plan) {
  MaskedSample sample;
  sample.input = seq;
  for (std::size_t p : plan.positions) {
    if (p == 0 || p > seq.word_spans.size()) {
      throw Error(ErrorCode::kValidation,
                  "plan position " + std::to_string(p) + " outside the sentence");
    }
    const WordSpan span = seq.word_spans[p - 1];
    for (std::size_t t = span.begin; t < span.end; ++t) {
      sample.targets[t] = seq.tokens[t];
      sample.corruption_kinds[t] = CorruptionKind::kMasked;
      sample.input.tokens[t] = kMaskToken;
    }
  }
  return sample;
}

namespace {

MaskedSample shifted(const MaskedSample& sentence, std::size_t shift,
                     TokenSequence input) {
  MaskedSample out;
  out.input = std::move(input);
  for (const auto& [pos, truth] : sentence.targets) out.targets[pos + shift] = truth;
  for (const auto& [pos, kind] : sentence.corruption_kinds) {
    out.corruption_kinds[pos + shift] = kind;
  }
  return out;
}

void append_marker(TokenSequence& seq, const char* marker) {
  seq.word_spans.push_back({seq.tokens.size(), seq.tokens.size() + 1});
  seq.tokens.emplace_back(marker);
}

void append_words(TokenSequence& seq, const TokenSequence& part, std::size_t token_limit) {
  const std::size_t base = seq.tokens.size();
  for (const auto& span : part.word_spans) {
    if (span.end > token_limit) break;  // whole words only
    for (std::size_t t = span.begin; t < span.end; ++t) seq.tokens.push_back(part.tokens[t]);
    seq.word_spans.push_back({base + span.begin, base + span.end});
  }
}

}  // namespace

std::optional<MaskedSample> assemble_with_prefix(const TokenSequence& prefix,
                                                 const MaskedSample& sentence,
                                                 std::size_t max_input_len) {
  const std::size_t fixed = sentence.input.size() + 3;
  if (fixed > max_input_len) return std::nullopt;
  const std::size_t budget = max_input_len - fixed;

  TokenSequence input;
  append_marker(input, kClsToken);
  append_words(input, prefix, budget);
  append_marker(input, kSepToken);
  const std::size_t shift = input.size();
  append_words(input, sentence.input, sentence.input.size());
  append_marker(input, kSepToken);
  return shifted(sentence, shift, std::move(input));
}

std::optional<MaskedSample> assemble_bare(const MaskedSample& sentence,
                                          std::size_t max_input_len) {
  if (sentence.input.size() + 2 > max_input_len) return std::nullopt;
  TokenSequence input;
  append_marker(input, kClsToken);
  append_words(input, sentence.input, sentence.input.size());
  append_marker(input, kSepToken);
  return shifted(sentence, 1, std::move(input));
}

}  // namespace blanc
