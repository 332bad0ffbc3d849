#include <atomic>
#include <iostream>

#include "common.hpp"
#include "handles.hpp"

namespace blanc_cli {

namespace {

// Sub-seed streams; the pair index is the second component.
constexpr std::uint64_t kRandomWordsStream = 1;
constexpr std::uint64_t kRandomSentencesStream = 2;
constexpr std::uint64_t kDeteriorationStream = 3;

struct Scored {
  blanc_status status = BLANC_OK;
  double value = 0.0;
};

Scored help(const blanc_backend* backend, const char* doc, const char* summary,
            const blanc_params& params) {
  blanc_score s{};
  Scored out;
  out.status = blanc_score_help(backend, doc, summary, &params, &s);
  out.value = s.value;
  return out;
}

std::string value_or_empty(const Scored& s) { return s.status == BLANC_OK ? fmt_double(s.value) : ""; }

std::string replaced_label(std::uint8_t mask) {
  std::string out;
  for (int b = 0; b < 3; ++b) {
    if (mask & (1u << b)) {
      if (!out.empty()) out += '+';
      out += std::to_string(b + 1);
    }
  }
  return out.empty() ? "-" : out;
}

using Generator = blanc_status (*)(const char*, std::size_t, std::uint64_t, char*, std::size_t,
                                   std::size_t*);

// One control experiment: each summary against a generated summary of the
// same length. Both sides are scored with `params`.
std::vector<Row> control_experiment(const RunConfig& cfg, const blanc_backend* backend,
                                    const std::vector<Pair>& pairs, const blanc_params& params,
                                    Generator generate, std::uint64_t stream, const char* label,
                                    std::atomic<std::size_t>& failures) {
  std::vector<Row> rows(pairs.size());
  parallel_for(pairs.size(), cfg.jobs, [&](std::size_t i) {
    const Pair& p = pairs[i];
    const std::size_t target = blanc_char_length(p.summary_text);
    const std::uint64_t seed = blanc_derive_seed(cfg.params.seed, stream, i, 0);
    Row row = {p.doc_id, p.summary_id, std::to_string(target), "", std::to_string(seed), "", "", ""};

    std::string control;
    std::size_t len = 0;
    blanc_status st = generate(p.doc_text, target, seed, nullptr, 0, &len);
    if (st == BLANC_OK || st == BLANC_ERR_BUFFER_TOO_SMALL) {
      control.assign(len + 1, '\0');
      st = generate(p.doc_text, target, seed, control.data(), control.size(), &len);
      control.resize(len);
    }
    if (st != BLANC_OK) {
      ++failures;
      log_failure(p.doc_id + "/" + p.summary_id + " " + label, st, blanc_last_error());
      row[7] = blanc_status_name(st);
      rows[i] = std::move(row);
      return;
    }
    row[3] = std::to_string(blanc_char_length(control.c_str()));

    const Scored original = help(backend, p.doc_text, p.summary_text, params);
    if (original.status != BLANC_OK) {
      log_failure(p.doc_id + "/" + p.summary_id + " original", original.status, blanc_last_error());
    }
    const Scored random = help(backend, p.doc_text, control.c_str(), params);
    if (random.status != BLANC_OK) {
      log_failure(p.doc_id + "/" + p.summary_id + " " + label, random.status, blanc_last_error());
    }
    row[5] = value_or_empty(original);
    row[6] = value_or_empty(random);
    const blanc_status worst = original.status != BLANC_OK ? original.status : random.status;
    if (worst != BLANC_OK) ++failures;
    row[7] = blanc_status_name(worst);
    rows[i] = std::move(row);
  });
  return rows;
}

}  // namespace

int cmd_validate(const RunConfig& cfg) {
  prepare_output_dir(cfg.out);
  CorpusPtr corpus = load_corpus_or_exit(cfg.in);
  BackendPtr backend = create_backend_or_exit(cfg);
  const std::vector<Pair> pairs = corpus_pairs(corpus.get());
  std::atomic<std::size_t> failures{0};

  const Row control_header = {"doc_id", "summary_id", "summary_chars", "control_chars",
                              "seed", "original", "random", "status"};

  write_csv(cfg.out / "validate_random_words.csv", control_header,
            control_experiment(cfg, backend.get(), pairs, cfg.params, blanc_random_words_summary,
                               kRandomWordsStream, "random_words", failures));

  // Random sentences are copied from the document, so the copy guard is on.
  blanc_params guarded = cfg.params;
  guarded.guard = BLANC_GUARD_DROP_COPY;
  write_csv(cfg.out / "validate_random_sentences.csv", control_header,
            control_experiment(cfg, backend.get(), pairs, guarded, blanc_random_sentences_summary,
                               kRandomSentencesStream, "random_sentences", failures));

  std::vector<const char*> docs, summaries;
  for (const auto& p : pairs) {
    docs.push_back(p.doc_text);
    summaries.push_back(p.summary_text);
  }
  const std::uint64_t det_seed = blanc_derive_seed(cfg.params.seed, kDeteriorationStream, 0, 0);
  std::vector<blanc_deterioration_row> det(pairs.size());
  if (!pairs.empty()) {
    check(blanc_deterioration_experiment(backend.get(), docs.data(), summaries.data(), pairs.size(),
                                         &cfg.params, det_seed, det.data()));
  }
  std::vector<Row> det_rows;
  for (std::size_t rank = 0; rank < det.size(); ++rank) {
    const auto& d = det[rank];
    const Pair& p = pairs[d.pair_index];
    if (d.status != BLANC_OK) {
      ++failures;
      log_failure(p.doc_id + "/" + p.summary_id + " deterioration", d.status, "");
      det_rows.push_back({std::to_string(rank), p.doc_id, p.summary_id, "", "", "", "", "", "",
                          blanc_status_name(d.status)});
      continue;
    }
    for (int k = 0; k < 4; ++k) {
      std::string scores, seeds, replaced;
      for (std::size_t j = 0; j < d.n_scores[k]; ++j) {
        const char* sep = j ? ";" : "";
        scores += sep + fmt_double(d.scores[k][j]);
        seeds += sep + std::to_string(d.seeds[k][j]);
        replaced += sep + replaced_label(d.replaced[k][j]);
      }
      det_rows.push_back({std::to_string(rank), p.doc_id, p.summary_id, std::to_string(k),
                          fmt_double(d.mean[k]), std::to_string(d.n_scores[k]), scores, seeds,
                          replaced, "ok"});
    }
  }
  write_csv(cfg.out / "validate_deterioration.csv",
            {"rank", "doc_id", "summary_id", "k", "mean", "runs", "scores", "seeds", "replaced",
             "status"},
            det_rows);

  nlohmann::json extra;
  extra["backend"] = blanc_backend_model_id(backend.get());
  extra["params"] = params_json(cfg.params);
  extra["pairs"] = pairs.size();
  extra["deterioration_seed"] = det_seed;
  extra["failed_rows"] = failures.load();
  write_manifest(cfg,
                 {"validate_random_words.csv", "validate_random_sentences.csv",
                  "validate_deterioration.csv"},
                 extra);
  std::cerr << "blanc: validated " << pairs.size() << " pairs, " << failures.load()
            << " failed rows\n";
  return kExitOk;
}

}  // namespace blanc_cli
