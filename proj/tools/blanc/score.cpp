#include <algorithm>
#include <atomic>
#include <iostream>

#include "common.hpp"
#include "handles.hpp"

namespace blanc_cli {

namespace {

const Row kScoreHeader = {"doc_id", "summary_id", "variant", "value", "S00", "S01", "S10", "S11",
                          "guard_skips", "overlength_skips", "summary_chars", "doc_chars",
                          "params", "seed", "passes", "status"};

std::string num(std::uint64_t v) { return std::to_string(v); }

}  // namespace

CorpusPtr load_corpus_or_exit(const std::string& path) {
  blanc_corpus* raw = nullptr;
  const blanc_status st = blanc_corpus_load(path.c_str(), &raw);
  if (st != BLANC_OK) {
    throw CommandError(kExitCorpus, std::string("corpus: ") + blanc_last_error());
  }
  return CorpusPtr(raw);
}

BackendPtr create_backend_or_exit(const RunConfig& cfg) {
  blanc_backend* raw = nullptr;
  const blanc_status st = blanc_backend_create(cfg.backend.c_str(), cfg.max_input_len, &raw);
  if (st != BLANC_OK) {
    throw CommandError(kExitBackend, std::string("backend: ") + blanc_last_error());
  }
  return BackendPtr(raw);
}

int cmd_score(const RunConfig& cfg) {
  prepare_output_dir(cfg.out);
  CorpusPtr corpus = load_corpus_or_exit(cfg.in);
  const bool needs_model =
      std::any_of(cfg.variants.begin(), cfg.variants.end(), [](Variant v) { return v != Variant::kJs; });
  BackendPtr backend;
  if (needs_model) backend = create_backend_or_exit(cfg);

  const std::vector<Pair> pairs = corpus_pairs(corpus.get());
  const std::string fingerprint = params_fingerprint(cfg.params);
  std::vector<std::vector<Row>> slots(pairs.size());
  std::atomic<std::size_t> failures{0};

  parallel_for(pairs.size(), cfg.jobs, [&](std::size_t i) {
    const Pair& p = pairs[i];
    const std::string summary_chars = num(blanc_char_length(p.summary_text));
    const std::string doc_chars = num(blanc_char_length(p.doc_text));
    for (Variant v : cfg.variants) {
      Row row = {p.doc_id, p.summary_id, variant_name(v), "", "", "", "", "", "", "",
                 summary_chars, doc_chars, fingerprint, "", "", ""};
      blanc_status st = BLANC_OK;
      if (v == Variant::kJs) {
        double js = 0.0;
        st = blanc_js_divergence(p.summary_text, p.doc_text,
                                 BLANC_PREP_STOPWORDS | BLANC_PREP_STEM, BLANC_DIVERGENCE_JS, &js);
        if (st == BLANC_OK) row[3] = fmt_double(-js);
      } else {
        blanc_score s{};
        if (v == Variant::kHelp) {
          st = blanc_score_help(backend.get(), p.doc_text, p.summary_text, &cfg.params, &s);
        } else {
          st = blanc_score_tune(backend.get(), p.doc_text, p.summary_text, &cfg.params,
                                cfg.params.seed, &s);
          row[13] = num(cfg.params.seed);
          row[14] = std::to_string(cfg.params.tune_passes);
        }
        if (st == BLANC_OK) row[3] = fmt_double(s.value);
        if (st == BLANC_OK || st == BLANC_ERR_NO_MASKABLE_CONTENT) {
          row[4] = num(s.counts.s00);
          row[5] = num(s.counts.s01);
          row[6] = num(s.counts.s10);
          row[7] = num(s.counts.s11);
          row[8] = num(s.guard_skips);
          row[9] = num(s.overlength_skips);
        }
      }
      row[15] = blanc_status_name(st);
      if (st != BLANC_OK) {
        ++failures;
        log_failure(p.doc_id + "/" + p.summary_id + " " + variant_name(v), st, blanc_last_error());
      }
      slots[i].push_back(std::move(row));
    }
  });

  std::vector<Row> rows;
  for (auto& s : slots) {
    for (auto& r : s) rows.push_back(std::move(r));
  }
  write_csv(cfg.out / "scores.csv", kScoreHeader, rows);

  nlohmann::json extra;
  extra["backend"] = backend ? blanc_backend_model_id(backend.get()) : "";
  extra["params"] = params_json(cfg.params);
  extra["pairs"] = pairs.size();
  extra["failed_rows"] = failures.load();
  write_manifest(cfg, {"scores.csv"}, extra);
  std::cerr << "blanc: scored " << pairs.size() << " pairs, " << failures.load()
            << " failed rows\n";
  return kExitOk;
}

}  // namespace blanc_cli
