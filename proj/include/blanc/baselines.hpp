#ifndef BLANC_BASELINES_HPP
#define BLANC_BASELINES_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "blanc/blanc_help.hpp"
#include "blanc/corpus.hpp"
#include "blanc/error.hpp"
#include "blanc/lm_backend.hpp"
#include "blanc/params.hpp"

namespace blanc {

// ---- Jensen-Shannon baseline ----------------------------------------------

struct Preprocessing {
  bool filter_stopwords = true;
  bool stem = true;
};

enum class DivergenceKind {
  kJensenShannon,  // 1/2 KL(P||M) + 1/2 KL(Q||M), M = (P+Q)/2
  kSymmetricKl,    // 1/2 KL(P||Q) + 1/2 KL(Q||P), add-one smoothed
};

struct UnigramDistribution {
  std::map<std::string, double> probabilities;
  Preprocessing preprocessing;
};

/// Lowercased alphanumeric terms of `text` after optional stopword removal
/// and Porter stemming.
std::vector<std::string> extract_terms(const std::string& text,
                                       const Preprocessing& prep);

/// Maximum-likelihood unigram distribution. Throws kDegenerateInput when no
/// term survives preprocessing.
UnigramDistribution unigram_distribution(const std::string& text,
                                         const Preprocessing& prep);

/// Natural-log Jensen-Shannon divergence over the union support.
double js_divergence(const std::map<std::string, double>& p,
                     const std::map<std::string, double>& q);

/// Add-one smoothed mean of KL(P||Q) and KL(Q||P) computed from raw counts.
double symmetric_kl_divergence(const std::vector<std::string>& p_terms,
                               const std::vector<std::string>& q_terms);

double js_divergence(const std::string& summary_text, const Document& document,
                     const Preprocessing& prep,
                     DivergenceKind kind = DivergenceKind::kJensenShannon);

/// Quality score used by the harness: -divergence.
double js_quality(const std::string& summary_text, const Document& document,
                  const Preprocessing& prep,
                  DivergenceKind kind = DivergenceKind::kJensenShannon);

const std::set<std::string>& stopwords();

/// Original Porter (1980) suffix-stripping stemmer on a lowercase word.
std::string porter_stem(const std::string& word);

// ---- Control summaries ----------------------------------------------------

/// Document words (punctuation words excluded) drawn uniformly with
/// replacement and joined by spaces. Stops at the first draw that would push
/// the length past `target_char_len`.
std::string random_words_summary(const Document& document,
                                 std::size_t target_char_len, std::uint64_t seed);

/// Random words filling exactly `char_len` characters.
std::string random_words_span(const Document& document, std::size_t char_len,
                              std::uint64_t seed);

/// Distinct document sentences in random order, appended until the length
/// reaches `target_char_len` or the sentences run out. Always at least one.
std::string random_sentences_summary(const Document& document,
                                     std::size_t target_char_len,
                                     std::uint64_t seed);

/// Replaces the chosen (1-based) sentences of a 3-sentence summary by random
/// document words of the same character length. Throws kInvalidArgument when
/// the summary does not segment into exactly three sentences or an index is
/// outside {1, 2, 3}.
std::string spoil_summary(const std::string& summary,
                          const std::set<int>& replace_indices,
                          const Document& document, std::uint64_t seed);

struct DeteriorationChoice {
  std::set<int> replaced;
  int run = 0;
  std::uint64_t seed = 0;
  double score = 0.0;
};

struct DeteriorationRow {
  std::size_t pair_index = 0;
  double original = 0.0;
  /// Indexed by k = number of replaced sentences (0..3).
  std::vector<std::vector<DeteriorationChoice>> choices;
  std::vector<double> mean;
  std::optional<std::string> error;
  ErrorCode error_code = ErrorCode::kInvalidArgument;  // meaningful with `error`
};

struct ExperimentPair {
  Document document;
  std::string summary;
};

/// For k = 0..3 averages BLANC-help over all C(3, k) sentence choices, two
/// seeded runs each (k = 0 is the original, evaluated once). Rows come back
/// sorted by original score, ascending; failed pairs sort last with `error`.
std::vector<DeteriorationRow> deterioration_experiment(
    const std::vector<ExperimentPair>& pairs, const BlancParams& params,
    const MaskedLm& backend, std::uint64_t seed);

/// One pair of the experiment; throws on scorer errors.
DeteriorationRow deterioration_row(const ExperimentPair& pair,
                                   const BlancParams& params,
                                   const MaskedLm& backend, std::uint64_t seed);

}  // namespace blanc

#endif  // BLANC_BASELINES_HPP
