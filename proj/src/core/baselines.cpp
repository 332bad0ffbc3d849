#include "blanc/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "blanc/analysis.hpp"
#include "blanc/error.hpp"
#include "blanc/rng.hpp"
#include "blanc/text.hpp"
#include "embedded_data.hpp"

namespace blanc {

// ---- Jensen-Shannon ---------------------------------------------------------

const std::set<std::string>& stopwords() {
  static const std::set<std::string> words = [] {
    auto lines = data::list_lines(data::stopwords_txt());
    return std::set<std::string>(lines.begin(), lines.end());
  }();
  return words;
}

std::vector<std::string> extract_terms(const std::string& text, const Preprocessing& prep) {
  std::vector<std::string> terms;
  for (const auto& word : split_words(text)) {
    if (is_punct_word(word)) continue;
    std::string term = ascii_lower(word);
    if (prep.filter_stopwords && stopwords().count(term)) continue;
    if (prep.stem) term = porter_stem(term);
    terms.push_back(std::move(term));
  }
  return terms;
}

UnigramDistribution unigram_distribution(const std::string& text, const Preprocessing& prep) {
  const auto terms = extract_terms(text, prep);
  if (terms.empty()) {
    throw Error(ErrorCode::kDegenerateInput, "no terms left after preprocessing");
  }
  UnigramDistribution dist;
  dist.preprocessing = prep;
  for (const auto& t : terms) dist.probabilities[t] += 1.0;
  const double n = static_cast<double>(terms.size());
  for (auto& [t, p] : dist.probabilities) p /= n;
  return dist;
}

double js_divergence(const std::map<std::string, double>& p,
                     const std::map<std::string, double>& q) {
  std::set<std::string> support;
  for (const auto& [t, v] : p) support.insert(t);
  for (const auto& [t, v] : q) support.insert(t);
  double kl_p = 0.0;
  double kl_q = 0.0;
  for (const auto& t : support) {
    const auto ip = p.find(t);
    const auto iq = q.find(t);
    const double pv = ip == p.end() ? 0.0 : ip->second;
    const double qv = iq == q.end() ? 0.0 : iq->second;
    const double m = 0.5 * (pv + qv);
    if (pv > 0.0) kl_p += pv * std::log(pv / m);
    if (qv > 0.0) kl_q += qv * std::log(qv / m);
  }
  return 0.5 * kl_p + 0.5 * kl_q;
}

double symmetric_kl_divergence(const std::vector<std::string>& p_terms,
                               const std::vector<std::string>& q_terms) {
  std::map<std::string, std::pair<double, double>> counts;
  for (const auto& t : p_terms) counts[t].first += 1.0;
  for (const auto& t : q_terms) counts[t].second += 1.0;
  const double v = static_cast<double>(counts.size());
  const double np = static_cast<double>(p_terms.size()) + v;
  const double nq = static_cast<double>(q_terms.size()) + v;
  double kl_pq = 0.0;
  double kl_qp = 0.0;
  for (const auto& [t, c] : counts) {
    const double pv = (c.first + 1.0) / np;
    const double qv = (c.second + 1.0) / nq;
    kl_pq += pv * std::log(pv / qv);
    kl_qp += qv * std::log(qv / pv);
  }
  return 0.5 * kl_pq + 0.5 * kl_qp;
}

double js_divergence(const std::string& summary_text, const Document& document,
                     const Preprocessing& prep, DivergenceKind kind) {
  if (kind == DivergenceKind::kSymmetricKl) {
    const auto p = extract_terms(summary_text, prep);
    const auto q = extract_terms(document.text, prep);
    if (p.empty() || q.empty()) {
      throw Error(ErrorCode::kDegenerateInput, "no terms left after preprocessing");
    }
    return symmetric_kl_divergence(p, q);
  }
  const auto p = unigram_distribution(summary_text, prep);
  const auto q = unigram_distribution(document.text, prep);
  return js_divergence(p.probabilities, q.probabilities);
}

double js_quality(const std::string& summary_text, const Document& document,
                  const Preprocessing& prep, DivergenceKind kind) {
  return -js_divergence(summary_text, document, prep, kind);
}

// ---- Control summaries -------------------------------------------------------

namespace {

struct WordPool {
  std::vector<std::string> words;
  std::vector<std::size_t> lengths;
};

WordPool document_words(const Document& document) {
  WordPool pool;
  for (auto& w : split_words(document.text)) {
    if (is_punct_word(w)) continue;
    pool.lengths.push_back(utf8_length(w));
    pool.words.push_back(std::move(w));
  }
  return pool;
}

std::string utf8_prefix(const std::string& s, std::size_t n) {
  return s.substr(0, utf8_offset(s, n));
}

}  // namespace

std::string random_words_summary(const Document& document, std::size_t target_char_len,
                                 std::uint64_t seed) {
  const WordPool pool = document_words(document);
  std::string out;
  if (pool.words.empty()) return out;
  Rng rng(seed);
  std::size_t len = 0;
  for (;;) {
    const auto i = rng.below(pool.words.size());
    const std::size_t add = (out.empty() ? 0 : 1) + pool.lengths[i];
    if (len + add > target_char_len) break;
    if (!out.empty()) out += ' ';
    out += pool.words[i];
    len += add;
  }
  return out;
}

std::string random_words_span(const Document& document, std::size_t char_len,
                              std::uint64_t seed) {
  const WordPool pool = document_words(document);
  if (pool.words.empty()) return std::string(char_len, '.');
  Rng rng(seed);
  std::string out;
  std::size_t len = 0;
  while (len < char_len) {
    const std::size_t sep = out.empty() ? 0 : 1;
    const std::size_t remaining = char_len - len;
    if (remaining <= sep) {
      out += '.';
      ++len;
      continue;
    }
    const std::size_t room = remaining - sep;
    auto i = rng.below(pool.words.size());
    std::string word;
    if (pool.lengths[i] <= room) {
      word = pool.words[i];
    } else {
      std::vector<std::size_t> fitting;
      for (std::size_t k = 0; k < pool.words.size(); ++k) {
        if (pool.lengths[k] <= room) fitting.push_back(k);
      }
      word = fitting.empty() ? utf8_prefix(pool.words[i], room)
                             : pool.words[fitting[rng.below(fitting.size())]];
    }
    if (sep) out += ' ';
    len += sep + utf8_length(word);
    out += word;
  }
  return out;
}

std::string random_sentences_summary(const Document& document, std::size_t target_char_len,
                                     std::uint64_t seed) {
  if (document.sentences.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "document '" + document.id + "' has no sentences");
  }
  std::vector<std::size_t> order(document.sentences.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  Rng rng(seed);
  rng.shuffle(std::span<std::size_t>(order));
  std::string out;
  for (std::size_t i : order) {
    if (!out.empty()) out += ' ';
    out += document.sentences[i];
    if (utf8_length(out) >= target_char_len) break;
  }
  return out;
}

std::string spoil_summary(const std::string& summary, const std::set<int>& replace_indices,
                          const Document& document, std::uint64_t seed) {
  const auto spans = sentence_spans(summary);
  if (spans.size() != 3) {
    throw Error(ErrorCode::kInvalidArgument,
                "summary has " + std::to_string(spans.size()) + " sentences, expected 3");
  }
  for (int idx : replace_indices) {
    if (idx < 1 || idx > 3) {
      throw Error(ErrorCode::kInvalidArgument, "sentence index must be 1, 2 or 3");
    }
  }
  std::string out;
  std::size_t cursor = 0;
  for (int idx = 1; idx <= 3; ++idx) {
    const auto [b, e] = spans[static_cast<std::size_t>(idx - 1)];
    out.append(summary, cursor, b - cursor);
    const std::string original = summary.substr(b, e - b);
    if (replace_indices.count(idx)) {
      out += random_words_span(document, utf8_length(original),
                               derive_seed(seed, static_cast<std::uint64_t>(idx)));
    } else {
      out += original;
    }
    cursor = e;
  }
  out.append(summary, cursor, std::string::npos);
  return out;
}

DeteriorationRow deterioration_row(const ExperimentPair& pair, const BlancParams& params,
                                   const MaskedLm& backend, std::uint64_t seed) {
  if (sentence_spans(pair.summary).size() != 3) {
    throw Error(ErrorCode::kInvalidArgument, "deterioration needs a 3-sentence summary");
  }
  DeteriorationRow row;
  row.original = score_help(pair.document, pair.summary, params, backend).value;
  row.choices.resize(4);
  row.mean.assign(4, 0.0);
  row.choices[0].push_back({{}, 0, 0, row.original});
  row.mean[0] = row.original;

  for (std::size_t k = 1; k <= 3; ++k) {
    double sum = 0.0;
    for (const auto& combo : combinations(3, k)) {
      std::set<int> replaced;
      std::uint64_t bits = 0;
      for (std::size_t c : combo) {
        replaced.insert(static_cast<int>(c) + 1);
        bits |= 1ULL << c;
      }
      for (int run = 0; run < 2; ++run) {
        const std::uint64_t s = derive_seed(seed, bits, static_cast<std::uint64_t>(run));
        const std::string spoiled = spoil_summary(pair.summary, replaced, pair.document, s);
        const double v = score_help(pair.document, spoiled, params, backend).value;
        row.choices[k].push_back({replaced, run, s, v});
        sum += v;
      }
    }
    row.mean[k] = sum / static_cast<double>(row.choices[k].size());
  }
  return row;
}

std::vector<DeteriorationRow> deterioration_experiment(const std::vector<ExperimentPair>& pairs,
                                                       const BlancParams& params,
                                                       const MaskedLm& backend,
                                                       std::uint64_t seed) {
  std::vector<DeteriorationRow> rows;
  rows.reserve(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    try {
      rows.push_back(deterioration_row(pairs[i], params, backend, derive_seed(seed, i)));
    } catch (const Error& e) {
      DeteriorationRow failed;
      failed.error = e.what();
      failed.error_code = e.code();
      rows.push_back(std::move(failed));
    }
    rows.back().pair_index = i;
  }
  std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    if (a.error.has_value() != b.error.has_value()) return !a.error.has_value();
    return a.original < b.original;
  });
  return rows;
}

}  // namespace blanc
