#include "blanc/blanc.h"

#include <cmath>
#include <cstring>
#include <limits>
#include <new>
#include <string>
#include <utility>
#include <vector>

#include "blanc/analysis.hpp"
#include "blanc/baselines.hpp"
#include "blanc/blanc_help.hpp"
#include "blanc/blanc_tune.hpp"
#include "blanc/corpus.hpp"
#include "blanc/error.hpp"
#include "blanc/lm_backend.hpp"
#include "blanc/rng.hpp"
#include "blanc/text.hpp"

struct blanc_backend {
  blanc::BackendHandle impl;
  std::string model_id;
};

struct blanc_corpus {
  struct Summary {
    const blanc::SummaryRecord* record;
    std::vector<std::pair<std::string, int>> human;
    std::vector<std::pair<std::string, double>> external;
  };
  std::vector<blanc::CorpusRecord> records;
  std::vector<std::vector<Summary>> summaries;
};

namespace {

thread_local std::string last_error;

blanc_status to_status(blanc::ErrorCode code) {
  return static_cast<blanc_status>(static_cast<int>(code));
}

blanc_status fail(blanc_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

template <typename F>
blanc_status guarded(F&& f) {
  try {
    last_error.clear();
    return f();
  } catch (const blanc::Error& e) {
    return fail(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(BLANC_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(BLANC_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(BLANC_ERR_INTERNAL, "unknown exception");
  }
}

#define BLANC_REQUIRE(cond, what) \
  if (!(cond)) return fail(BLANC_ERR_INVALID_ARGUMENT, what)

blanc::BlancParams from_c(const blanc_params& p) {
  blanc::BlancParams out;
  out.masking_period = p.masking_period;
  out.min_word_len = p.min_word_len;
  if (p.mode != BLANC_MODE_WORD && p.mode != BLANC_MODE_TOKEN) {
    throw blanc::Error(blanc::ErrorCode::kInvalidArgument, "unknown mask mode");
  }
  out.mode = p.mode == BLANC_MODE_TOKEN ? blanc::MaskMode::kToken : blanc::MaskMode::kWord;
  out.p_mask = p.p_mask;
  out.tune_passes = p.tune_passes;
  switch (p.guard) {
    case BLANC_GUARD_OFF: out.guard = blanc::GuardMode::kOff; break;
    case BLANC_GUARD_SKIP_SENTENCE: out.guard = blanc::GuardMode::kSkipSentence; break;
    case BLANC_GUARD_DROP_COPY: out.guard = blanc::GuardMode::kDropCopy; break;
    default: throw blanc::Error(blanc::ErrorCode::kInvalidArgument, "unknown guard mode");
  }
  out.seed = p.seed;
  out.validate();
  return out;
}

blanc_params to_c(const blanc::BlancParams& p) {
  blanc_params out;
  out.masking_period = p.masking_period;
  out.min_word_len = p.min_word_len;
  out.mode = p.mode == blanc::MaskMode::kToken ? BLANC_MODE_TOKEN : BLANC_MODE_WORD;
  out.p_mask = p.p_mask;
  out.tune_passes = p.tune_passes;
  out.guard = p.guard == blanc::GuardMode::kSkipSentence ? BLANC_GUARD_SKIP_SENTENCE
              : p.guard == blanc::GuardMode::kDropCopy   ? BLANC_GUARD_DROP_COPY
                                                         : BLANC_GUARD_OFF;
  out.seed = p.seed;
  return out;
}

void fill_score(const blanc::BlancScore& s, blanc_score* out) {
  out->value = s.value;
  out->counts = {s.counts.s00, s.counts.s01, s.counts.s10, s.counts.s11};
  out->variant = s.variant == blanc::Variant::kTune ? BLANC_VARIANT_TUNE : BLANC_VARIANT_HELP;
  out->guard_skips = s.guard_skips;
  out->overlength_skips = s.overlength_skips;
  out->seed = s.seed;
  out->tuning_samples = s.tuning_samples;
}

blanc_status write_text(const std::string& text, char* buf, size_t cap, size_t* out_len) {
  if (out_len) *out_len = text.size();
  if (buf == nullptr || cap < text.size() + 1) {
    return fail(BLANC_ERR_BUFFER_TOO_SMALL,
                "buffer needs " + std::to_string(text.size() + 1) + " bytes");
  }
  std::memcpy(buf, text.c_str(), text.size() + 1);
  return BLANC_OK;
}

const blanc_corpus::Summary* summary_at(const blanc_corpus* c, size_t doc, size_t s) {
  if (!c || doc >= c->summaries.size() || s >= c->summaries[doc].size()) return nullptr;
  return &c->summaries[doc][s];
}

blanc::ScoreMatrix dense_matrix(const double* scores, size_t n_rows, size_t n_cols) {
  std::vector<std::string> rows(n_rows);
  std::vector<std::string> cols(n_cols);
  for (size_t i = 0; i < n_rows; ++i) rows[i] = std::to_string(i);
  for (size_t j = 0; j < n_cols; ++j) cols[j] = std::to_string(j);
  blanc::ScoreMatrix m(std::move(rows), std::move(cols));
  for (size_t i = 0; i < n_rows; ++i) {
    for (size_t j = 0; j < n_cols; ++j) {
      const double v = scores[i * n_cols + j];
      if (!std::isnan(v)) m.set(i, j, v);
    }
  }
  return m;
}

}  // namespace

extern "C" {

const char* blanc_version(void) { return BLANC_VERSION_STRING; }

const char* blanc_status_name(blanc_status status) {
  switch (status) {
    case BLANC_OK: return "ok";
    case BLANC_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case BLANC_ERR_IO: return "io";
    case BLANC_ERR_PARSE: return "parse";
    case BLANC_ERR_VALIDATION: return "validation";
    case BLANC_ERR_DEGENERATE_INPUT: return "degenerate_input";
    case BLANC_ERR_NO_MASKABLE_CONTENT: return "no_maskable_content";
    case BLANC_ERR_LENGTH: return "length";
    case BLANC_ERR_CAPABILITY: return "capability";
    case BLANC_ERR_BACKEND: return "backend";
    case BLANC_ERR_UNDEFINED_CORRELATION: return "undefined_correlation";
    case BLANC_ERR_BUFFER_TOO_SMALL: return "buffer_too_small";
    case BLANC_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* blanc_last_error(void) { return last_error.c_str(); }

uint64_t blanc_derive_seed(uint64_t base, uint64_t a, uint64_t b, uint64_t c) {
  return blanc::derive_seed(base, a, b, c);
}

// ---- parameters ---------------------------------------------------------------

void blanc_params_init(blanc_params* params) {
  if (params) *params = to_c(blanc::BlancParams{});
}

blanc_status blanc_params_validate(const blanc_params* params) {
  BLANC_REQUIRE(params, "params is NULL");
  return guarded([&] {
    from_c(*params);
    return BLANC_OK;
  });
}

blanc_status blanc_params_to_json(const blanc_params* params, char* buf, size_t cap,
                                  size_t* out_len) {
  BLANC_REQUIRE(params, "params is NULL");
  return guarded([&] { return write_text(from_c(*params).to_json(), buf, cap, out_len); });
}

blanc_status blanc_params_from_json(const char* json, blanc_params* out) {
  BLANC_REQUIRE(json && out, "NULL argument");
  return guarded([&] {
    *out = to_c(blanc::BlancParams::from_json(json));
    return BLANC_OK;
  });
}

blanc_status blanc_params_fingerprint(const blanc_params* params, char out[17]) {
  BLANC_REQUIRE(params && out, "NULL argument");
  return guarded([&] {
    const std::string fp = from_c(*params).fingerprint();
    std::memcpy(out, fp.c_str(), 17);
    return BLANC_OK;
  });
}

// ---- backends -------------------------------------------------------------------

blanc_status blanc_backend_create(const char* backend_id, size_t max_input_len,
                                  blanc_backend** out) {
  BLANC_REQUIRE(backend_id && out, "NULL argument");
  *out = nullptr;
  return guarded([&] {
    auto impl = blanc::make_backend(backend_id, max_input_len);
    *out = new blanc_backend{impl, impl->model_id()};
    return BLANC_OK;
  });
}

void blanc_backend_destroy(blanc_backend* backend) { delete backend; }

const char* blanc_backend_model_id(const blanc_backend* backend) {
  return backend ? backend->model_id.c_str() : nullptr;
}

size_t blanc_backend_max_input_len(const blanc_backend* backend) {
  return backend ? backend->impl->max_input_len() : 0;
}

// ---- corpora --------------------------------------------------------------------

blanc_status blanc_corpus_load(const char* path, blanc_corpus** out) {
  BLANC_REQUIRE(path && out, "NULL argument");
  *out = nullptr;
  return guarded([&] {
    auto corpus = std::make_unique<blanc_corpus>();
    corpus->records = blanc::load_corpus(path);
    for (const auto& rec : corpus->records) {
      auto& list = corpus->summaries.emplace_back();
      for (const auto& s : rec.summaries) {
        blanc_corpus::Summary entry{&s, {}, {}};
        entry.human.assign(s.human_scores.begin(), s.human_scores.end());
        entry.external.assign(s.external_scores.begin(), s.external_scores.end());
        list.push_back(std::move(entry));
      }
    }
    *out = corpus.release();
    return BLANC_OK;
  });
}

void blanc_corpus_destroy(blanc_corpus* corpus) { delete corpus; }

size_t blanc_corpus_document_count(const blanc_corpus* corpus) {
  return corpus ? corpus->records.size() : 0;
}

const char* blanc_corpus_document_id(const blanc_corpus* corpus, size_t doc) {
  if (!corpus || doc >= corpus->records.size()) return nullptr;
  return corpus->records[doc].document.id.c_str();
}

const char* blanc_corpus_document_text(const blanc_corpus* corpus, size_t doc) {
  if (!corpus || doc >= corpus->records.size()) return nullptr;
  return corpus->records[doc].document.text.c_str();
}

size_t blanc_corpus_summary_count(const blanc_corpus* corpus, size_t doc) {
  if (!corpus || doc >= corpus->summaries.size()) return 0;
  return corpus->summaries[doc].size();
}

const char* blanc_corpus_summary_id(const blanc_corpus* corpus, size_t doc, size_t s) {
  const auto* e = summary_at(corpus, doc, s);
  return e ? e->record->id.c_str() : nullptr;
}

const char* blanc_corpus_summary_text(const blanc_corpus* corpus, size_t doc, size_t s) {
  const auto* e = summary_at(corpus, doc, s);
  return e ? e->record->text.c_str() : nullptr;
}

const char* blanc_corpus_summary_source(const blanc_corpus* corpus, size_t doc, size_t s) {
  const auto* e = summary_at(corpus, doc, s);
  return e ? e->record->source.c_str() : nullptr;
}

size_t blanc_corpus_human_score_count(const blanc_corpus* corpus, size_t doc, size_t s) {
  const auto* e = summary_at(corpus, doc, s);
  return e ? e->human.size() : 0;
}

blanc_status blanc_corpus_human_score(const blanc_corpus* corpus, size_t doc, size_t s,
                                      size_t k, const char** annotator, int* score) {
  const auto* e = summary_at(corpus, doc, s);
  BLANC_REQUIRE(e && k < e->human.size(), "index out of range");
  if (annotator) *annotator = e->human[k].first.c_str();
  if (score) *score = e->human[k].second;
  return BLANC_OK;
}

size_t blanc_corpus_external_score_count(const blanc_corpus* corpus, size_t doc, size_t s) {
  const auto* e = summary_at(corpus, doc, s);
  return e ? e->external.size() : 0;
}

blanc_status blanc_corpus_external_score(const blanc_corpus* corpus, size_t doc, size_t s,
                                         size_t k, const char** metric, double* value) {
  const auto* e = summary_at(corpus, doc, s);
  BLANC_REQUIRE(e && k < e->external.size(), "index out of range");
  if (metric) *metric = e->external[k].first.c_str();
  if (value) *value = e->external[k].second;
  return BLANC_OK;
}

// ---- text -------------------------------------------------------------------------

size_t blanc_char_length(const char* text) { return text ? blanc::utf8_length(text) : 0; }

size_t blanc_sentence_count(const char* text) {
  return text ? blanc::sentence_spans(text).size() : 0;
}

blanc_status blanc_compression_factor(const char* summary, const char* document, double* out) {
  BLANC_REQUIRE(summary && document && out, "NULL argument");
  return guarded([&] {
    *out = blanc::compression_factor(summary, blanc::Document::from_text("", document));
    return BLANC_OK;
  });
}

// ---- scoring ----------------------------------------------------------------------

blanc_status blanc_score_help(const blanc_backend* backend, const char* document,
                              const char* summary, const blanc_params* params,
                              blanc_score* out) {
  BLANC_REQUIRE(backend && document && summary && params && out, "NULL argument");
  *out = blanc_score{};
  return guarded([&] {
    try {
      const auto s = blanc::score_help(blanc::Document::from_text("", document), summary,
                                       from_c(*params), *backend->impl);
      fill_score(s, out);
    } catch (const blanc::NoMaskableContentError& e) {
      out->guard_skips = e.guard_skips();
      out->overlength_skips = e.overlength_skips();
      throw;
    }
    return BLANC_OK;
  });
}

blanc_status blanc_score_tune(const blanc_backend* backend, const char* document,
                              const char* summary, const blanc_params* params, uint64_t seed,
                              blanc_score* out) {
  BLANC_REQUIRE(backend && document && summary && params && out, "NULL argument");
  *out = blanc_score{};
  out->variant = BLANC_VARIANT_TUNE;
  return guarded([&] {
    try {
      const auto s = blanc::score_tune(blanc::Document::from_text("", document), summary,
                                       from_c(*params), *backend->impl, seed);
      fill_score(s, out);
    } catch (const blanc::NoMaskableContentError& e) {
      out->overlength_skips = e.overlength_skips();
      throw;
    }
    return BLANC_OK;
  });
}

blanc_status blanc_js_divergence(const char* summary, const char* document, unsigned prep_flags,
                                 int kind, double* out) {
  BLANC_REQUIRE(summary && document && out, "NULL argument");
  BLANC_REQUIRE(kind == BLANC_DIVERGENCE_JS || kind == BLANC_DIVERGENCE_SYMMETRIC_KL,
                "unknown divergence kind");
  return guarded([&] {
    blanc::Preprocessing prep;
    prep.filter_stopwords = (prep_flags & BLANC_PREP_STOPWORDS) != 0;
    prep.stem = (prep_flags & BLANC_PREP_STEM) != 0;
    *out = blanc::js_divergence(summary, blanc::Document::from_text("", document), prep,
                                kind == BLANC_DIVERGENCE_JS ? blanc::DivergenceKind::kJensenShannon
                                                            : blanc::DivergenceKind::kSymmetricKl);
    return BLANC_OK;
  });
}

// ---- control summaries --------------------------------------------------------------

blanc_status blanc_random_words_summary(const char* document, size_t target_chars,
                                        uint64_t seed, char* buf, size_t cap, size_t* out_len) {
  BLANC_REQUIRE(document, "document is NULL");
  return guarded([&] {
    const auto text = blanc::random_words_summary(blanc::Document::from_text("", document),
                                                  target_chars, seed);
    return write_text(text, buf, cap, out_len);
  });
}

blanc_status blanc_random_sentences_summary(const char* document, size_t target_chars,
                                            uint64_t seed, char* buf, size_t cap,
                                            size_t* out_len) {
  BLANC_REQUIRE(document, "document is NULL");
  return guarded([&] {
    const auto text = blanc::random_sentences_summary(blanc::Document::from_text("", document),
                                                      target_chars, seed);
    return write_text(text, buf, cap, out_len);
  });
}

blanc_status blanc_spoil_summary(const char* summary, const int* indices, size_t n_indices,
                                 const char* document, uint64_t seed, char* buf, size_t cap,
                                 size_t* out_len) {
  BLANC_REQUIRE(summary && document && (indices || n_indices == 0), "NULL argument");
  return guarded([&] {
    const std::set<int> chosen(indices, indices + n_indices);
    const auto text =
        blanc::spoil_summary(summary, chosen, blanc::Document::from_text("", document), seed);
    return write_text(text, buf, cap, out_len);
  });
}

blanc_status blanc_deterioration_experiment(const blanc_backend* backend,
                                            const char* const* documents,
                                            const char* const* summaries, size_t n,
                                            const blanc_params* params, uint64_t seed,
                                            blanc_deterioration_row* rows) {
  BLANC_REQUIRE(backend && params && (n == 0 || (documents && summaries && rows)),
                "NULL argument");
  return guarded([&] {
    const auto p = from_c(*params);
    std::vector<blanc::ExperimentPair> pairs;
    for (size_t i = 0; i < n; ++i) {
      BLANC_REQUIRE(documents[i] && summaries[i], "NULL document or summary");
      pairs.push_back({blanc::Document::from_text(std::to_string(i), documents[i]), summaries[i]});
    }
    const auto result = blanc::deterioration_experiment(pairs, p, *backend->impl, seed);
    for (size_t i = 0; i < result.size(); ++i) {
      const auto& r = result[i];
      blanc_deterioration_row& out = rows[i];
      out = blanc_deterioration_row{};
      out.pair_index = r.pair_index;
      if (r.error) {
        out.status = to_status(r.error_code);
        continue;
      }
      out.status = BLANC_OK;
      out.original = r.original;
      for (size_t k = 0; k < 4; ++k) {
        out.mean[k] = r.mean[k];
        out.n_scores[k] = r.choices[k].size();
        for (size_t c = 0; c < r.choices[k].size() && c < 6; ++c) {
          out.scores[k][c] = r.choices[k][c].score;
          out.seeds[k][c] = r.choices[k][c].seed;
          uint8_t mask = 0;
          for (int idx : r.choices[k][c].replaced) mask |= static_cast<uint8_t>(1u << (idx - 1));
          out.replaced[k][c] = mask;
        }
      }
    }
    return BLANC_OK;
  });
}

// ---- statistics ----------------------------------------------------------------------

blanc_status blanc_pearson(const double* x, const double* y, size_t n, blanc_correlation* out) {
  BLANC_REQUIRE(x && y && out, "NULL argument");
  return guarded([&] {
    const auto c = blanc::pearson({x, n}, {y, n});
    *out = {c.r, c.p, c.n};
    return BLANC_OK;
  });
}

blanc_status blanc_spearman(const double* x, const double* y, size_t n, blanc_correlation* out) {
  BLANC_REQUIRE(x && y && out, "NULL argument");
  return guarded([&] {
    const auto c = blanc::spearman({x, n}, {y, n});
    *out = {c.r, c.p, c.n};
    return BLANC_OK;
  });
}

blanc_status blanc_aggregate_human(const double* scores, size_t n_summaries, size_t n_annotators,
                                   const double* value_map, double* out) {
  BLANC_REQUIRE((scores && out) || n_summaries == 0, "NULL argument");
  return guarded([&] {
    blanc::ValueMap map = blanc::kIdentityValueMap;
    if (value_map) std::copy(value_map, value_map + 5, map.begin());
    const auto agg =
        blanc::aggregate_human(dense_matrix(scores, n_summaries, n_annotators), map);
    for (size_t i = 0; i < n_summaries; ++i) {
      auto it = agg.means.find(std::to_string(i));
      out[i] = it == agg.means.end() ? std::numeric_limits<double>::quiet_NaN() : it->second;
    }
    return BLANC_OK;
  });
}

blanc_status blanc_annotator_split(const double* scores, size_t n_summaries, size_t n_annotators,
                                   const double* metric, size_t group_size, int method,
                                   blanc_split_row* rows, size_t cap, size_t* count) {
  BLANC_REQUIRE(scores && metric && count, "NULL argument");
  BLANC_REQUIRE(n_annotators <= 64, "at most 64 annotators are supported");
  BLANC_REQUIRE(method == BLANC_PEARSON || method == BLANC_SPEARMAN, "unknown method");
  BLANC_REQUIRE(group_size >= 1 && group_size < n_annotators,
                "group size must lie in [1, annotators)");
  *count = blanc::binomial(n_annotators, group_size);
  if (rows == nullptr || cap < *count) {
    return fail(BLANC_ERR_BUFFER_TOO_SMALL, "row buffer holds fewer than C(n, k) rows");
  }
  return guarded([&] {
    std::map<std::string, double> metric_map;
    for (size_t i = 0; i < n_summaries; ++i) {
      if (!std::isnan(metric[i])) metric_map[std::to_string(i)] = metric[i];
    }
    const auto result = blanc::annotator_split(
        dense_matrix(scores, n_summaries, n_annotators), metric_map, group_size,
        method == BLANC_PEARSON ? blanc::CorrelationMethod::kPearson
                                : blanc::CorrelationMethod::kSpearman);
    for (size_t i = 0; i < result.size(); ++i) {
      const auto& r = result[i];
      blanc_split_row& out = rows[i];
      out = blanc_split_row{};
      for (const auto& col : r.group) out.group_mask |= 1ULL << std::stoul(col);
      out.n = r.n;
      if (r.human_human) {
        out.human_defined = 1;
        out.human_r = r.human_human->r;
        out.human_p = r.human_human->p;
      }
      if (r.metric_humans) {
        out.metric_defined = 1;
        out.metric_r = r.metric_humans->r;
        out.metric_p = r.metric_humans->p;
      }
    }
    return BLANC_OK;
  });
}

blanc_status blanc_normalize_by_compression(double score, double compression, double* out) {
  BLANC_REQUIRE(out, "NULL argument");
  return guarded([&] {
    *out = blanc::normalize_by_compression(score, compression);
    return BLANC_OK;
  });
}

blanc_status blanc_blend_scores(const double* a, const double* b, size_t n, double wa, double wb,
                                double* out) {
  BLANC_REQUIRE(a && b && out, "NULL argument");
  return guarded([&] {
    std::map<std::string, double> ma;
    std::map<std::string, double> mb;
    for (size_t i = 0; i < n; ++i) {
      if (!std::isnan(a[i])) ma[std::to_string(i)] = a[i];
      if (!std::isnan(b[i])) mb[std::to_string(i)] = b[i];
    }
    const auto blended = blanc::blend_scores(ma, mb, {wa, wb});
    for (size_t i = 0; i < n; ++i) {
      auto it = blended.find(std::to_string(i));
      out[i] = it == blended.end() ? std::numeric_limits<double>::quiet_NaN() : it->second;
    }
    return BLANC_OK;
  });
}

}  // extern "C"
