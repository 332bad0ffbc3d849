#include <cmath>
#include <iostream>
#include <limits>
#include <map>
#include <set>

#include "common.hpp"
#include "handles.hpp"

namespace blanc_cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kAlpha = 0.05;

struct Table {
  std::vector<std::string> header;
  std::vector<Row> rows;

  std::size_t column(const std::string& name, const std::string& origin) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return i;
    }
    throw CommandError(kExitCorpus, origin + ": missing column '" + name + "'");
  }
};

Table load_table(const std::string& path) {
  std::vector<Row> rows;
  try {
    rows = read_csv(path);
  } catch (const std::exception& e) {
    throw CommandError(kExitCorpus, path + ": " + e.what());
  }
  if (rows.empty()) throw CommandError(kExitCorpus, path + ": empty file");
  Table t;
  t.header = rows.front();
  t.rows.assign(rows.begin() + 1, rows.end());
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    if (t.rows[i].size() != t.header.size()) {
      throw CommandError(kExitCorpus, path + ":" + std::to_string(i + 2) + ": expected " +
                                          std::to_string(t.header.size()) + " fields");
    }
  }
  return t;
}

struct Outcome {
  blanc_status status = BLANC_OK;
  blanc_correlation c{kNaN, kNaN, 0};
  bool ok() const { return status == BLANC_OK; }
  bool significant() const { return ok() && c.p <= kAlpha; }
};

Outcome correlate_pairs(const std::vector<double>& x, const std::vector<double>& y,
                        const std::string& method) {
  std::vector<double> a, b;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (std::isfinite(x[i]) && std::isfinite(y[i])) {
      a.push_back(x[i]);
      b.push_back(y[i]);
    }
  }
  Outcome out;
  out.c.n = a.size();
  out.status = method == "pearson" ? blanc_pearson(a.data(), b.data(), a.size(), &out.c)
                                   : blanc_spearman(a.data(), b.data(), a.size(), &out.c);
  if (!out.ok()) out.c.n = a.size();
  return out;
}

std::string flag(bool defined, bool significant) {
  if (!defined) return "";
  return significant ? "true" : "false";
}

std::string file_safe(const std::string& name) {
  std::string out;
  for (char c : name) out += std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
  return out;
}

}  // namespace

int cmd_correlate(const RunConfig& cfg) {
  prepare_output_dir(cfg.out);
  const Table scores = load_table(cfg.in);
  const std::size_t c_sid = scores.column("summary_id", cfg.in);
  const std::size_t c_var = scores.column("variant", cfg.in);
  const std::size_t c_val = scores.column("value", cfg.in);
  const std::size_t c_status = scores.column("status", cfg.in);
  const std::size_t c_schars = scores.column("summary_chars", cfg.in);
  const std::size_t c_dchars = scores.column("doc_chars", cfg.in);

  std::vector<std::string> ids;
  std::map<std::string, std::size_t> index;
  std::vector<double> length, compression;
  std::vector<std::string> estimator_order;
  std::map<std::string, std::vector<double>> estimators;

  auto summary_slot = [&](const std::string& sid) {
    auto [it, inserted] = index.try_emplace(sid, ids.size());
    if (inserted) {
      ids.push_back(sid);
      length.push_back(kNaN);
      compression.push_back(kNaN);
      for (auto& [_, col] : estimators) col.push_back(kNaN);
    }
    return it->second;
  };
  auto estimator_column = [&](const std::string& name) -> std::vector<double>& {
    auto [it, inserted] = estimators.try_emplace(name, std::vector<double>(ids.size(), kNaN));
    if (inserted) estimator_order.push_back(name);
    return it->second;
  };

  for (const Row& r : scores.rows) {
    const std::size_t i = summary_slot(r[c_sid]);
    const auto schars = parse_double(r[c_schars]);
    const auto dchars = parse_double(r[c_dchars]);
    if (schars) length[i] = *schars;
    if (schars && dchars && *dchars > 0) compression[i] = *schars / *dchars;
    auto& col = estimator_column(r[c_var]);
    if (r[c_status] == "ok") {
      if (auto v = parse_double(r[c_val])) col[i] = *v;
    }
  }

  // Human labels: summary id -> annotator -> label.
  std::map<std::string, std::map<std::string, double>> labels;
  if (!cfg.human.empty()) {
    const Table human = load_table(cfg.human);
    const std::size_t h_sid = human.column("summary_id", cfg.human);
    const std::size_t h_ann = human.column("annotator", cfg.human);
    const std::size_t h_score = human.column("score", cfg.human);
    for (std::size_t i = 0; i < human.rows.size(); ++i) {
      const Row& r = human.rows[i];
      const auto v = parse_double(r[h_score]);
      if (!v) {
        throw CommandError(kExitCorpus, cfg.human + ":" + std::to_string(i + 2) +
                                            ": score '" + r[h_score] + "' is not a number");
      }
      labels[r[h_sid]][r[h_ann]] = *v;
    }
  }
  if (!cfg.corpus.empty()) {
    CorpusPtr corpus = load_corpus_or_exit(cfg.corpus);
    for (const Pair& p : corpus_pairs(corpus.get())) {
      auto it = index.find(p.summary_id);
      const std::size_t nh = blanc_corpus_human_score_count(corpus.get(), p.doc, p.summary);
      for (std::size_t k = 0; k < nh && cfg.human.empty(); ++k) {
        const char* annotator = nullptr;
        int score = 0;
        check(blanc_corpus_human_score(corpus.get(), p.doc, p.summary, k, &annotator, &score));
        labels[p.summary_id][annotator] = score;
      }
      if (it == index.end()) continue;
      const std::size_t ne = blanc_corpus_external_score_count(corpus.get(), p.doc, p.summary);
      for (std::size_t k = 0; k < ne; ++k) {
        const char* metric = nullptr;
        double value = 0.0;
        check(blanc_corpus_external_score(corpus.get(), p.doc, p.summary, k, &metric, &value));
        estimator_column(metric)[it->second] = value;
      }
    }
  }

  std::set<std::string> annotator_set;
  for (const auto& [sid, by] : labels) {
    if (!index.count(sid)) continue;
    for (const auto& [a, _] : by) annotator_set.insert(a);
  }
  const std::vector<std::string> annotators(annotator_set.begin(), annotator_set.end());
  const std::size_t n = ids.size();
  const std::size_t na = annotators.size();
  std::vector<double> matrix(n * na, kNaN);
  for (std::size_t i = 0; i < n; ++i) {
    auto it = labels.find(ids[i]);
    if (it == labels.end()) continue;
    for (std::size_t a = 0; a < na; ++a) {
      auto jt = it->second.find(annotators[a]);
      if (jt != it->second.end()) matrix[i * na + a] = jt->second;
    }
  }
  std::vector<double> humans(n, kNaN);
  if (na > 0) {
    const blanc_status st = blanc_aggregate_human(
        matrix.data(), n, na, cfg.value_map.empty() ? nullptr : cfg.value_map.data(), humans.data());
    if (st != BLANC_OK) {
      throw CommandError(kExitCorpus, std::string("human scores: ") + blanc_last_error());
    }
  } else {
    std::cerr << "blanc: warning: no human scores match the score file\n";
  }

  std::vector<std::string> outputs;
  if (!cfg.blend.empty()) {
    for (const auto& name : cfg.blend) {
      if (!estimators.count(name)) {
        throw CommandError(kExitConfig, "--blend: unknown estimator '" + name + "'");
      }
    }
    const auto& a = estimators.at(cfg.blend[0]);
    const auto& b = estimators.at(cfg.blend[1]);
    std::vector<double> blended(n, kNaN);
    const blanc_status st =
        blanc_blend_scores(a.data(), b.data(), n, cfg.weights[0], cfg.weights[1], blended.data());
    if (st == BLANC_OK) {
      estimator_column("blend") = blended;
      std::vector<Row> rows;
      for (std::size_t i = 0; i < n; ++i) {
        rows.push_back({ids[i], fmt_double(a[i]), fmt_double(b[i]), fmt_double(blended[i])});
      }
      write_csv(cfg.out / "blended_scores.csv",
                {"summary_id", cfg.blend[0], cfg.blend[1], "blend"}, rows);
      outputs.push_back("blended_scores.csv");
    } else {
      log_failure("blend", st, blanc_last_error());
    }
  }

  std::vector<std::string> methods;
  if (cfg.method == "both") methods = {"pearson", "spearman"};
  else methods = {cfg.method};

  struct Target {
    const char* name;
    const std::vector<double>* values;
  };
  const Target targets[] = {{"humans", &humans}, {"length", &length}, {"compression", &compression}};

  std::vector<Row> corr_rows, table_rows;
  std::size_t undefined = 0;
  auto emit = [&](const std::string& name, const std::vector<double>& values, bool with_humans) {
    for (const auto& method : methods) {
      Row table_row = {name, method, "", "", ""};
      for (std::size_t t = 0; t < 3; ++t) {
        if (t == 0 && !with_humans) continue;
        const Outcome o = correlate_pairs(values, *targets[t].values, method);
        if (!o.ok()) ++undefined;
        corr_rows.push_back({name, targets[t].name, method, std::to_string(o.c.n),
                             o.ok() ? fmt_double(o.c.r) : "", o.ok() ? fmt_double(o.c.p) : "",
                             flag(o.ok(), o.significant()), blanc_status_name(o.status)});
        if (o.significant()) table_row[2 + t] = fmt_double(o.c.r);
      }
      table_rows.push_back(std::move(table_row));
    }
  };
  for (const auto& name : estimator_order) emit(name, estimators.at(name), true);
  if (na > 0) emit("humans", humans, false);

  write_csv(cfg.out / "correlations.csv",
            {"estimator", "target", "method", "n", "r", "p", "significant", "status"}, corr_rows);
  write_csv(cfg.out / "summary_table.csv", {"estimator", "method", "humans", "L", "C"}, table_rows);
  outputs.insert(outputs.begin(), {"correlations.csv", "summary_table.csv"});

  const std::string split_method = cfg.method == "pearson" ? "pearson" : "spearman";
  if (na >= 2 && cfg.group >= 1 && cfg.group < na) {
    for (const auto& name : estimator_order) {
      const auto& metric = estimators.at(name);
      std::size_t count = 0;
      blanc_status st = blanc_annotator_split(
          matrix.data(), n, na, metric.data(), cfg.group,
          split_method == "pearson" ? BLANC_PEARSON : BLANC_SPEARMAN, nullptr, 0, &count);
      std::vector<blanc_split_row> split(count);
      if (st == BLANC_ERR_BUFFER_TOO_SMALL || st == BLANC_OK) {
        st = blanc_annotator_split(matrix.data(), n, na, metric.data(), cfg.group,
                                   split_method == "pearson" ? BLANC_PEARSON : BLANC_SPEARMAN,
                                   split.data(), split.size(), &count);
      }
      if (st != BLANC_OK) {
        log_failure("annotator split " + name, st, blanc_last_error());
        continue;
      }
      std::vector<Row> rows;
      for (const auto& s : split) {
        std::string group;
        for (std::size_t a = 0; a < na; ++a) {
          if (s.group_mask & (std::uint64_t{1} << a)) group += (group.empty() ? "" : ";") + annotators[a];
        }
        rows.push_back({group, std::to_string(s.n),
                        s.human_defined ? fmt_double(s.human_r) : "",
                        s.human_defined ? fmt_double(s.human_p) : "",
                        flag(s.human_defined, s.human_defined && s.human_p <= kAlpha),
                        s.metric_defined ? fmt_double(s.metric_r) : "",
                        s.metric_defined ? fmt_double(s.metric_p) : "",
                        flag(s.metric_defined, s.metric_defined && s.metric_p <= kAlpha)});
      }
      const std::string file = "annotator_split_" + file_safe(name) + ".csv";
      write_csv(cfg.out / file,
                {"group", "n", "human_r", "human_p", "human_significant", "metric_r", "metric_p",
                 "metric_significant"},
                rows);
      outputs.push_back(file);
    }
  } else if (na > 0) {
    std::cerr << "blanc: warning: annotator split needs more than --group (" << cfg.group
              << ") annotators, found " << na << "\n";
  }

  nlohmann::json extra;
  extra["summaries"] = n;
  extra["annotators"] = annotators;
  extra["split_method"] = split_method;
  extra["undefined_correlations"] = undefined;
  if (!cfg.human.empty()) extra["human_fingerprint"] = file_fingerprint(cfg.human);
  if (!cfg.corpus.empty()) extra["corpus_fingerprint"] = file_fingerprint(cfg.corpus);
  write_manifest(cfg, outputs, extra);
  if (undefined > 0) std::cerr << "blanc: " << undefined << " correlations undefined\n";
  return kExitOk;
}

}  // namespace blanc_cli
