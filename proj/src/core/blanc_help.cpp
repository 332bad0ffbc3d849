#include "blanc/blanc_help.hpp"

#include "blanc/error.hpp"
#include "blanc/masking.hpp"
#include "blanc/text.hpp"
#include "scoring_detail.hpp"

namespace blanc {

void UnmaskingCounts::add(bool base_ok, bool assisted_ok) {
  if (base_ok) {
    assisted_ok ? ++s11 : ++s10;
  } else {
    assisted_ok ? ++s01 : ++s00;
  }
}

UnmaskingCounts& UnmaskingCounts::operator+=(const UnmaskingCounts& o) {
  s00 += o.s00;
  s01 += o.s01;
  s10 += o.s10;
  s11 += o.s11;
  return *this;
}

std::string to_string(Variant v) { return v == Variant::kHelp ? "help" : "tune"; }

namespace {

double total_or_throw(const UnmaskingCounts& c) {
  const auto total = c.total();
  if (total == 0) throw NoMaskableContentError("no masked events were counted", 0, 0);
  return static_cast<double>(total);
}

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += ' ';
    out += p;
  }
  return out;
}

}  // namespace

double blanc_from_counts(const UnmaskingCounts& c) {
  const double total = total_or_throw(c);
  return (static_cast<double>(c.s01) - static_cast<double>(c.s10)) / total;
}

double accuracy_assisted(const UnmaskingCounts& c) {
  return static_cast<double>(c.s11 + c.s01) / total_or_throw(c);
}

double accuracy_base(const UnmaskingCounts& c) {
  return static_cast<double>(c.s11 + c.s10) / total_or_throw(c);
}

GuardDecision apply_guard(const std::string& sentence,
                          const std::vector<std::string>& summary_sentences,
                          GuardMode guard) {
  GuardDecision d;
  if (guard == GuardMode::kOff) {
    d.summary_sentences = summary_sentences;
    return d;
  }
  const std::string_view needle = trim(sentence);
  for (const auto& s : summary_sentences) {
    if (trim(s) == needle) {
      if (guard == GuardMode::kSkipSentence) {
        d.skip = true;
        d.summary_sentences = summary_sentences;
        return d;
      }
      continue;  // kDropCopy
    }
    d.summary_sentences.push_back(s);
  }
  return d;
}

BlancScore score_help(const Document& document, const std::string& summary_text,
                      const BlancParams& params, const MaskedLm& backend) {
  params.validate();
  if (trim(document.text).empty()) {
    throw Error(ErrorCode::kInvalidArgument, "document '" + document.id + "' is empty");
  }
  const Tokenizer& tokenizer = backend.tokenizer();
  const std::size_t max_len = backend.max_input_len();
  const auto summary_sentences = split_sentences(summary_text);
  const TokenSequence summary_tokens = tokenizer.tokenize(split_words(summary_text));

  BlancScore score;
  score.variant = Variant::kHelp;
  score.params = params;

  for (std::size_t si = 0; si < document.sentences.size(); ++si) {
    const std::string& sentence = document.sentences[si];
    const GuardDecision guard = apply_guard(sentence, summary_sentences, params.guard);
    if (guard.skip) {
      ++score.guard_skips;
      continue;
    }
    const bool dropped = guard.summary_sentences.size() != summary_sentences.size();
    const TokenSequence prefix =
        dropped ? tokenizer.tokenize(split_words(join(guard.summary_sentences)))
                : summary_tokens;
    const TokenSequence filler = build_filler(prefix);

    const auto words = split_words(sentence);
    const TokenSequence seq = tokenizer.tokenize(words);
    const auto plans = periodic_plans(words, seq, si, params);
    if (plans.empty()) continue;
    if (seq.size() + 3 > max_len) {
      ++score.overlength_skips;
      continue;
    }
    for (const auto& plan : plans) {
      const MaskedSample masked = apply_mask(seq, plan);
      const auto help_in = assemble_with_prefix(prefix, masked, max_len);
      const auto base_in = assemble_with_prefix(filler, masked, max_len);
      const Predictions help = backend.predict_masked(*help_in);
      const Predictions base = backend.predict_masked(*base_in);
      detail::count_plan_events(seq, plan, base, detail::sentence_shift(*base_in, seq),
                                help, detail::sentence_shift(*help_in, seq), params.mode,
                                score.counts);
    }
  }

  if (score.counts.total() == 0) {
    throw NoMaskableContentError(
        "no maskable content in document '" + document.id + "' (guard skips: " +
            std::to_string(score.guard_skips) +
            ", over-length skips: " + std::to_string(score.overlength_skips) + ")",
        score.guard_skips, score.overlength_skips);
  }
  score.value = blanc_from_counts(score.counts);
  return score;
}

}  // namespace blanc
