#ifndef BLANC_MASKING_HPP
#define BLANC_MASKING_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "blanc/lm_backend.hpp"
#include "blanc/params.hpp"

namespace blanc {

/// One periodic masking configuration of a sentence. Positions are 1-based
/// word indices; `truth` holds the word text at each position.
struct MaskingPlan {
  std::size_t sentence_index = 0;
  int offset = 1;  // i0 in [1, M]
  std::vector<std::size_t> positions;
  std::map<std::size_t, std::string> truth;
};

/// Character length of a word with edge punctuation stripped.
std::size_t word_length(const std::string& word);

/// 1-based indices of maskable words. Word mode: length >= L_min. Token mode
/// additionally admits any word the tokenizer split into two or more tokens.
/// `tokens` must be the tokenization of `words`; word mode ignores it.
std::vector<std::size_t> eligible_positions(std::span<const std::string> words,
                                            const TokenSequence& tokens,
                                            const BlancParams& params);

/// Word-mode shorthand.
std::vector<std::size_t> eligible_positions(std::span<const std::string> words,
                                            const BlancParams& params);

/// Groups eligible positions by offset: plan i0 holds every eligible p with
/// (p - i0) % M == 0. Offsets with no positions are omitted.
std::vector<MaskingPlan> periodic_plans(std::span<const std::string> words,
                                        std::span<const std::size_t> eligible,
                                        std::size_t sentence_index, int period);

std::vector<MaskingPlan> periodic_plans(std::span<const std::string> words,
                                        const TokenSequence& tokens,
                                        std::size_t sentence_index,
                                        const BlancParams& params);

/// Same token count and spans as `summary_tokens`, every token ".".
TokenSequence build_filler(const TokenSequence& summary_tokens);

/// Replaces every token of every planned word by [MASK]. Throws kValidation
/// when a position does not name a word of `seq`.
MaskedSample apply_mask(const TokenSequence& seq, const MaskingPlan& plan);

/// [CLS] prefix [SEP] sentence [SEP], with target positions shifted. The
/// prefix is cut from its end so the whole input fits `max_input_len`.
/// Returns nullopt when the bare sentence plus three markers does not fit.
std::optional<MaskedSample> assemble_with_prefix(const TokenSequence& prefix,
                                                 const MaskedSample& sentence,
                                                 std::size_t max_input_len);

/// [CLS] sentence [SEP]; nullopt when over length.
std::optional<MaskedSample> assemble_bare(const MaskedSample& sentence,
                                          std::size_t max_input_len);

}  // namespace blanc

#endif  // BLANC_MASKING_HPP
