#include "blanc/blanc_tune.hpp"

#include <algorithm>

#include "blanc/error.hpp"
#include "blanc/masking.hpp"
#include "blanc/rng.hpp"
#include "blanc/text.hpp"
#include "scoring_detail.hpp"

namespace blanc {

std::vector<MaskedSample> TuningSet::masked_samples() const {
  std::vector<MaskedSample> out;
  out.reserve(samples.size());
  for (const auto& s : samples) out.push_back(s.sample);
  return out;
}

namespace {

CorruptionKind draw_kind(Rng& rng) {
  const auto r = rng.below(10);
  if (r < 8) return CorruptionKind::kMasked;
  return r == 8 ? CorruptionKind::kRandom : CorruptionKind::kUnchanged;
}

}  // namespace

TuningSet build_tuning_set(const std::string& summary_text, const BlancParams& params,
                           const MaskedLm& backend, std::uint64_t seed) {
  params.validate();
  if (trim(summary_text).empty()) {
    throw Error(ErrorCode::kInvalidArgument, "cannot build a tuning set from an empty summary");
  }
  auto words = split_words(summary_text);
  TokenSequence tokens = backend.tokenizer().tokenize(words);

  // Keep whole words that fit between [CLS] and [SEP].
  const std::size_t room = backend.max_input_len() - 2;
  std::size_t keep = 0;
  while (keep < tokens.word_spans.size() && tokens.word_spans[keep].end <= room) ++keep;
  if (keep < words.size()) {
    words.resize(keep);
    tokens.word_spans.resize(keep);
    tokens.tokens.resize(keep ? tokens.word_spans.back().end : 0);
  }

  TuningSet set;
  set.passes = params.tune_passes;
  set.seed = seed;
  set.words = static_cast<std::size_t>(
      std::count_if(words.begin(), words.end(), [](const std::string& w) { return !is_punct_word(w); }));
  set.mask_count =
      std::max<std::size_t>(1, static_cast<std::size_t>(static_cast<double>(set.words) * params.p_mask));
  set.eligible = eligible_positions(words, tokens, params);
  if (set.eligible.empty()) return set;

  const auto& vocab = backend.vocabulary();
  if (vocab.empty()) throw Error(ErrorCode::kBackend, backend.model_id() + " has an empty vocabulary");

  Rng rng(seed);
  for (int pass = 0; pass < params.tune_passes; ++pass) {
    std::vector<std::size_t> order = set.eligible;
    rng.shuffle(std::span<std::size_t>(order));
    for (std::size_t start = 0; start < order.size(); start += set.mask_count) {
      const std::size_t stop = std::min(order.size(), start + set.mask_count);
      TuningSample ts;
      ts.pass = pass;
      ts.sample.input.tokens.emplace_back(kClsToken);
      ts.sample.input.word_spans.push_back({0, 1});
      for (const auto& span : tokens.word_spans) {
        ts.sample.input.word_spans.push_back({span.begin + 1, span.end + 1});
      }
      ts.sample.input.tokens.insert(ts.sample.input.tokens.end(), tokens.tokens.begin(),
                                    tokens.tokens.end());
      ts.sample.input.word_spans.push_back(
          {ts.sample.input.tokens.size(), ts.sample.input.tokens.size() + 1});
      ts.sample.input.tokens.emplace_back(kSepToken);

      for (std::size_t k = start; k < stop; ++k) {
        const std::size_t p = order[k];
        ts.positions.push_back(p);
        const CorruptionKind kind = draw_kind(rng);
        const WordSpan span = tokens.word_spans[p - 1];
        for (std::size_t t = span.begin; t < span.end; ++t) {
          const std::size_t pos = t + 1;
          ts.sample.targets[pos] = tokens.tokens[t];
          ts.sample.corruption_kinds[pos] = kind;
          if (kind == CorruptionKind::kMasked) {
            ts.sample.input.tokens[pos] = kMaskToken;
          } else if (kind == CorruptionKind::kRandom) {
            ts.sample.input.tokens[pos] = vocab[rng.below(vocab.size())];
          }
        }
      }
      std::sort(ts.positions.begin(), ts.positions.end());
      set.samples.push_back(std::move(ts));
    }
  }
  return set;
}

BlancScore score_tune(const Document& document, const std::string& summary_text,
                      const BlancParams& params, const MaskedLm& backend,
                      std::uint64_t seed) {
  params.validate();
  if (trim(document.text).empty()) {
    throw Error(ErrorCode::kInvalidArgument, "document '" + document.id + "' is empty");
  }
  if (!backend.supports_tuning()) {
    throw Error(ErrorCode::kCapability, backend.model_id() + " does not support fine-tuning");
  }

  TuningSet set;
  if (!trim(summary_text).empty()) set = build_tuning_set(summary_text, params, backend, seed);
  BackendHandle tuned;
  if (!set.samples.empty()) tuned = backend.fine_tune(set.masked_samples(), 1, seed);

  BlancParams inference = params;
  inference.masking_period = params.tune_inference_period();

  BlancScore score;
  score.variant = Variant::kTune;
  score.params = params;
  score.seed = seed;
  score.tuning_samples = set.samples.size();

  const std::size_t max_len = backend.max_input_len();
  for (std::size_t si = 0; si < document.sentences.size(); ++si) {
    const auto words = split_words(document.sentences[si]);
    const TokenSequence seq = backend.tokenizer().tokenize(words);
    const auto plans = periodic_plans(words, seq, si, inference);
    if (plans.empty()) continue;
    if (seq.size() + 2 > max_len) {
      ++score.overlength_skips;
      continue;
    }
    for (const auto& plan : plans) {
      const auto input = assemble_bare(apply_mask(seq, plan), max_len);
      const Predictions base = backend.predict_masked(*input);
      const Predictions help = tuned ? tuned->predict_masked(*input) : base;
      const std::size_t shift = detail::sentence_shift(*input, seq);
      detail::count_plan_events(seq, plan, base, shift, help, shift, params.mode, score.counts);
    }
  }

  if (score.counts.total() == 0) {
    throw NoMaskableContentError("no maskable content in document '" + document.id + "'", 0,
                                 score.overlength_skips);
  }
  score.value = blanc_from_counts(score.counts);
  return score;
}

}  // namespace blanc
