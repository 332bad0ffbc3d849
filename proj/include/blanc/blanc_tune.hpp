#ifndef BLANC_BLANC_TUNE_HPP
#define BLANC_BLANC_TUNE_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "blanc/blanc_help.hpp"
#include "blanc/corpus.hpp"
#include "blanc/lm_backend.hpp"
#include "blanc/params.hpp"

namespace blanc {

struct TuningSample {
  MaskedSample sample;
  int pass = 0;                        // 0-based
  std::vector<std::size_t> positions;  // 1-based summary word indices
};

struct TuningSet {
  std::vector<TuningSample> samples;
  int passes = 0;
  std::uint64_t seed = 0;
  std::size_t words = 0;       // N_words
  std::size_t mask_count = 0;  // N_mask
  std::vector<std::size_t> eligible;

  std::vector<MaskedSample> masked_samples() const;
};

/// Tiny masked dataset drawn from the summary: per pass the eligible word
/// positions are shuffled and consumed in chunks of N_mask =
/// max(1, int(N_words * p_mask)); each selected word is masked (80%),
/// replaced by random vocabulary tokens (10%) or left as is (10%).
TuningSet build_tuning_set(const std::string& summary_text,
                           const BlancParams& params, const MaskedLm& backend,
                           std::uint64_t seed);

/// BLANC-tune: compares a copy of `backend` tuned on the summary against the
/// base model, unmasking bare document sentences with M = int(1 / p_mask).
BlancScore score_tune(const Document& document, const std::string& summary_text,
                      const BlancParams& params, const MaskedLm& backend,
                      std::uint64_t seed);

}  // namespace blanc

#endif  // BLANC_BLANC_TUNE_HPP
