/*
 * libblanc C API.
 *
 * Opaque handles own their resources and are released with the matching
 * *_destroy call. Every fallible function returns a blanc_status; on failure
 * blanc_last_error() describes the problem. The message is thread-local and
 * stays valid until the next libblanc call on the same thread.
 *
 * Functions producing text write into a caller buffer. They always store the
 * required length (without the terminating NUL) in *out_len; when `cap` is
 * too small they return BLANC_ERR_BUFFER_TOO_SMALL and leave `buf` alone, so
 * callers can pass (NULL, 0) to query the size first.
 */
#ifndef BLANC_BLANC_H
#define BLANC_BLANC_H

#include <stddef.h>
#include <stdint.h>

#if defined(BLANC_BUILDING_LIBRARY)
#define BLANC_API __attribute__((visibility("default")))
#else
#define BLANC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum blanc_status {
  BLANC_OK = 0,
  BLANC_ERR_INVALID_ARGUMENT = 1,
  BLANC_ERR_IO = 2,
  BLANC_ERR_PARSE = 3,
  BLANC_ERR_VALIDATION = 4,
  BLANC_ERR_DEGENERATE_INPUT = 5,
  BLANC_ERR_NO_MASKABLE_CONTENT = 6,
  BLANC_ERR_LENGTH = 7,
  BLANC_ERR_CAPABILITY = 8,
  BLANC_ERR_BACKEND = 9,
  BLANC_ERR_UNDEFINED_CORRELATION = 10,
  BLANC_ERR_BUFFER_TOO_SMALL = 20,
  BLANC_ERR_INTERNAL = 99
} blanc_status;

enum { BLANC_MODE_WORD = 0, BLANC_MODE_TOKEN = 1 };
enum { BLANC_GUARD_OFF = 0, BLANC_GUARD_SKIP_SENTENCE = 1, BLANC_GUARD_DROP_COPY = 2 };
enum { BLANC_VARIANT_HELP = 0, BLANC_VARIANT_TUNE = 1 };
enum { BLANC_PREP_STOPWORDS = 1, BLANC_PREP_STEM = 2 };
enum { BLANC_DIVERGENCE_JS = 0, BLANC_DIVERGENCE_SYMMETRIC_KL = 1 };
enum { BLANC_PEARSON = 0, BLANC_SPEARMAN = 1 };

typedef struct blanc_params {
  int32_t masking_period; /* M, default 6 */
  int32_t min_word_len;   /* L_min, default 4 */
  int32_t mode;           /* BLANC_MODE_* */
  double p_mask;          /* default 0.15 */
  int32_t tune_passes;    /* N, default 10 */
  int32_t guard;          /* BLANC_GUARD_* */
  uint64_t seed;
} blanc_params;

typedef struct blanc_counts {
  uint64_t s00, s01, s10, s11;
} blanc_counts;

typedef struct blanc_score {
  double value;
  blanc_counts counts;
  int32_t variant;
  uint64_t guard_skips;
  uint64_t overlength_skips;
  uint64_t seed;           /* tune only */
  uint64_t tuning_samples; /* tune only */
} blanc_score;

typedef struct blanc_correlation {
  double r;
  double p;
  size_t n;
} blanc_correlation;

/* Deterioration results for one pair. Slot k holds the scores with k
 * sentences replaced: k = 0 has one entry, k = 1 and 2 have six (three
 * choices x two runs), k = 3 has two. replaced[k][i] is a bitmask of the
 * replaced 1-based sentences (bit 0 = sentence 1). */
typedef struct blanc_deterioration_row {
  size_t pair_index;
  blanc_status status;
  double original;
  double mean[4];
  size_t n_scores[4];
  double scores[4][6];
  uint64_t seeds[4][6];
  uint8_t replaced[4][6];
} blanc_deterioration_row;

typedef struct blanc_split_row {
  uint64_t group_mask; /* bit i set: annotator column i is in the small group */
  size_t n;            /* summaries used */
  int32_t human_defined;
  double human_r, human_p;
  int32_t metric_defined;
  double metric_r, metric_p;
} blanc_split_row;

typedef struct blanc_backend blanc_backend;
typedef struct blanc_corpus blanc_corpus;

/* ---- general ---------------------------------------------------------- */
BLANC_API const char* blanc_version(void);
BLANC_API const char* blanc_status_name(blanc_status status);
BLANC_API const char* blanc_last_error(void);
/* Deterministic sub-seed for (base, a, b, c); same mixing as the library's
 * experiment drivers. */
BLANC_API uint64_t blanc_derive_seed(uint64_t base, uint64_t a, uint64_t b, uint64_t c);

/* ---- parameters ------------------------------------------------------- */
BLANC_API void blanc_params_init(blanc_params* params);
BLANC_API blanc_status blanc_params_validate(const blanc_params* params);
BLANC_API blanc_status blanc_params_to_json(const blanc_params* params, char* buf,
                                            size_t cap, size_t* out_len);
BLANC_API blanc_status blanc_params_from_json(const char* json, blanc_params* out);
/* Writes 16 hex digits and a NUL. */
BLANC_API blanc_status blanc_params_fingerprint(const blanc_params* params, char out[17]);

/* ---- backends --------------------------------------------------------- */
/* backend_id: "reference" or "<kind>:<model>"; max_input_len >= 2. */
BLANC_API blanc_status blanc_backend_create(const char* backend_id, size_t max_input_len,
                                            blanc_backend** out);
BLANC_API void blanc_backend_destroy(blanc_backend* backend);
BLANC_API const char* blanc_backend_model_id(const blanc_backend* backend);
BLANC_API size_t blanc_backend_max_input_len(const blanc_backend* backend);

/* ---- corpora ---------------------------------------------------------- */
BLANC_API blanc_status blanc_corpus_load(const char* path, blanc_corpus** out);
BLANC_API void blanc_corpus_destroy(blanc_corpus* corpus);
BLANC_API size_t blanc_corpus_document_count(const blanc_corpus* corpus);
/* Accessors return NULL (or 0) for out-of-range indices. */
BLANC_API const char* blanc_corpus_document_id(const blanc_corpus* corpus, size_t doc);
BLANC_API const char* blanc_corpus_document_text(const blanc_corpus* corpus, size_t doc);
BLANC_API size_t blanc_corpus_summary_count(const blanc_corpus* corpus, size_t doc);
BLANC_API const char* blanc_corpus_summary_id(const blanc_corpus* corpus, size_t doc, size_t s);
BLANC_API const char* blanc_corpus_summary_text(const blanc_corpus* corpus, size_t doc, size_t s);
BLANC_API const char* blanc_corpus_summary_source(const blanc_corpus* corpus, size_t doc, size_t s);
BLANC_API size_t blanc_corpus_human_score_count(const blanc_corpus* corpus, size_t doc, size_t s);
BLANC_API blanc_status blanc_corpus_human_score(const blanc_corpus* corpus, size_t doc, size_t s,
                                                size_t k, const char** annotator, int* score);
BLANC_API size_t blanc_corpus_external_score_count(const blanc_corpus* corpus, size_t doc,
                                                   size_t s);
BLANC_API blanc_status blanc_corpus_external_score(const blanc_corpus* corpus, size_t doc,
                                                   size_t s, size_t k, const char** metric,
                                                   double* value);

/* ---- text ------------------------------------------------------------- */
BLANC_API size_t blanc_char_length(const char* text);
BLANC_API size_t blanc_sentence_count(const char* text);
BLANC_API blanc_status blanc_compression_factor(const char* summary, const char* document,
                                                double* out);

/* ---- scoring ---------------------------------------------------------- */
/* On BLANC_ERR_NO_MASKABLE_CONTENT, *out still carries the skip counters. */
BLANC_API blanc_status blanc_score_help(const blanc_backend* backend, const char* document,
                                        const char* summary, const blanc_params* params,
                                        blanc_score* out);
BLANC_API blanc_status blanc_score_tune(const blanc_backend* backend, const char* document,
                                        const char* summary, const blanc_params* params,
                                        uint64_t seed, blanc_score* out);
/* Divergence (not negated); prep_flags is a BLANC_PREP_* mask. */
BLANC_API blanc_status blanc_js_divergence(const char* summary, const char* document,
                                           unsigned prep_flags, int kind, double* out);

/* ---- control summaries ------------------------------------------------ */
BLANC_API blanc_status blanc_random_words_summary(const char* document, size_t target_chars,
                                                  uint64_t seed, char* buf, size_t cap,
                                                  size_t* out_len);
BLANC_API blanc_status blanc_random_sentences_summary(const char* document, size_t target_chars,
                                                      uint64_t seed, char* buf, size_t cap,
                                                      size_t* out_len);
/* indices: 1-based sentence numbers out of {1, 2, 3}. */
BLANC_API blanc_status blanc_spoil_summary(const char* summary, const int* indices,
                                           size_t n_indices, const char* document,
                                           uint64_t seed, char* buf, size_t cap,
                                           size_t* out_len);
/* Fills rows[0..n) sorted by original score; failed pairs come last with a
 * non-OK status. Returns BLANC_OK unless the arguments are invalid. */
BLANC_API blanc_status blanc_deterioration_experiment(const blanc_backend* backend,
                                                      const char* const* documents,
                                                      const char* const* summaries, size_t n,
                                                      const blanc_params* params, uint64_t seed,
                                                      blanc_deterioration_row* rows);

/* ---- statistics ------------------------------------------------------- */
BLANC_API blanc_status blanc_pearson(const double* x, const double* y, size_t n,
                                     blanc_correlation* out);
BLANC_API blanc_status blanc_spearman(const double* x, const double* y, size_t n,
                                      blanc_correlation* out);
/* scores: n_summaries x n_annotators, row-major, NaN = missing. value_map
 * has 5 entries (labels 0..4) or is NULL for identity. out[i] is NaN for
 * summaries without any score. */
BLANC_API blanc_status blanc_aggregate_human(const double* scores, size_t n_summaries,
                                             size_t n_annotators, const double* value_map,
                                             double* out);
/* One row per combination of group_size annotators (at most 64 annotators).
 * *count receives C(n_annotators, group_size). metric: n_summaries, NaN =
 * missing. method: BLANC_PEARSON or BLANC_SPEARMAN. */
BLANC_API blanc_status blanc_annotator_split(const double* scores, size_t n_summaries,
                                             size_t n_annotators, const double* metric,
                                             size_t group_size, int method,
                                             blanc_split_row* rows, size_t cap, size_t* count);
BLANC_API blanc_status blanc_normalize_by_compression(double score, double compression,
                                                      double* out);
/* out[i] = wa*a[i] + wb*b[i], NaN where either side is NaN. Fails with
 * BLANC_ERR_VALIDATION when no index has both values. */
BLANC_API blanc_status blanc_blend_scores(const double* a, const double* b, size_t n,
                                          double wa, double wb, double* out);

#ifdef __cplusplus
}  /* extern "C" */
#endif

#endif /* BLANC_BLANC_H */
