#include "blanc/lm_backend.hpp"

#include <mutex>
#include <unordered_map>

#include "blanc/error.hpp"
#include "blanc/text.hpp"
#include "embedded_data.hpp"

namespace blanc {

bool is_sentinel(const std::string& token) {
  return token == kMaskToken || token == kUnkToken || token == kClsToken ||
         token == kSepToken;
}

void TokenSequence::check() const {
  std::size_t expect = 0;
  for (const auto& span : word_spans) {
    if (span.begin != expect || span.end <= span.begin) {
      throw Error(ErrorCode::kValidation, "word spans do not tile the token sequence");
    }
    expect = span.end;
  }
  if (expect != tokens.size()) {
    throw Error(ErrorCode::kValidation, "word spans do not cover every token");
  }
}

Predictions MaskedLm::predict_masked(const MaskedSample& sample) const {
  if (sample.input.size() > max_input_len()) {
    throw Error(ErrorCode::kLength,
                "input of " + std::to_string(sample.input.size()) +
                    " tokens exceeds max_input_len " + std::to_string(max_input_len()));
  }
  for (const auto& [pos, truth] : sample.targets) {
    if (pos >= sample.input.size()) {
      throw Error(ErrorCode::kValidation, "target position outside the input");
    }
  }
  if (sample.targets.empty()) return {};
  Predictions out = do_predict(sample);
  for (const auto& [pos, token] : out) {
    if (!sample.targets.count(pos)) {
      throw Error(ErrorCode::kBackend, model_id() + " predicted a non-target position");
    }
  }
  return out;
}

std::shared_ptr<const MaskedLm> MaskedLm::fine_tune(std::span<const MaskedSample> samples,
                                                    int passes, std::uint64_t seed) const {
  if (!supports_tuning()) {
    throw Error(ErrorCode::kCapability, model_id() + " does not support fine-tuning");
  }
  if (samples.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "fine_tune needs at least one sample");
  }
  if (passes < 1) throw Error(ErrorCode::kInvalidArgument, "fine_tune passes must be >= 1");
  return do_fine_tune(samples, passes, seed);
}

// ---- ReferenceTokenizer ----------------------------------------------------

ReferenceTokenizer::ReferenceTokenizer(
    std::optional<std::unordered_set<std::string>> vocabulary)
    : vocabulary_(std::move(vocabulary)) {}

std::vector<std::string> ReferenceTokenizer::word_pieces(const std::string& word) const {
  std::string lower = ascii_lower(word);
  const std::size_t len = utf8_length(lower);
  if (!vocabulary_ || vocabulary_->count(lower) || len < 2 || is_punct_word(lower)) {
    return {std::move(lower)};
  }
  const std::size_t cut = utf8_offset(lower, (len + 1) / 2);
  return {lower.substr(0, cut), "##" + lower.substr(cut)};
}

TokenSequence ReferenceTokenizer::tokenize(std::span<const std::string> words) const {
  TokenSequence seq;
  for (const auto& word : words) {
    const std::size_t begin = seq.tokens.size();
    for (auto& piece : word_pieces(word)) seq.tokens.push_back(std::move(piece));
    seq.word_spans.push_back({begin, seq.tokens.size()});
  }
  return seq;
}

// ---- ReferenceBackend ------------------------------------------------------

namespace {

std::optional<std::unordered_set<std::string>> to_set(
    const std::optional<std::vector<std::string>>& v) {
  if (!v) return std::nullopt;
  std::unordered_set<std::string> s;
  for (const auto& w : *v) s.insert(ascii_lower(w));
  return s;
}

}  // namespace

ReferenceBackend::ReferenceBackend(std::set<std::string> memory,
                                   ReferenceBackendOptions options)
    : memory_(std::move(memory)),
      options_(std::move(options)),
      tokenizer_(to_set(options_.vocabulary)) {
  if (options_.max_input_len < 2) {
    throw Error(ErrorCode::kInvalidArgument, "max_input_len must be >= 2");
  }
  if (options_.vocabulary) {
    std::erase_if(*options_.vocabulary, [](const std::string& t) { return is_sentinel(t); });
  }
}

const std::vector<std::string>& ReferenceBackend::vocabulary() const {
  if (options_.vocabulary && !options_.vocabulary->empty()) return *options_.vocabulary;
  return default_replacement_vocabulary();
}

Predictions ReferenceBackend::do_predict(const MaskedSample& sample) const {
  std::unordered_map<std::string, std::size_t> occurrences;
  for (const auto& t : sample.input.tokens) ++occurrences[t];

  Predictions out;
  for (const auto& [pos, truth] : sample.targets) {
    std::size_t elsewhere = 0;
    if (auto it = occurrences.find(truth); it != occurrences.end()) {
      elsewhere = it->second - (sample.input.tokens[pos] == truth ? 1 : 0);
    }
    const bool recovered = !is_sentinel(truth) && (elsewhere > 0 || memory_.count(truth));
    out[pos] = recovered ? truth : kUnkToken;
  }
  return out;
}

BackendHandle ReferenceBackend::do_fine_tune(std::span<const MaskedSample> samples,
                                             int /*passes*/, std::uint64_t /*seed*/) const {
  std::set<std::string> memory = memory_;
  for (const auto& sample : samples) {
    for (const auto& [pos, truth] : sample.targets) memory.insert(truth);
  }
  return std::make_shared<ReferenceBackend>(std::move(memory), options_);
}

BackendHandle make_reference_backend(std::set<std::string> memory,
                                     ReferenceBackendOptions options) {
  return std::make_shared<ReferenceBackend>(std::move(memory), std::move(options));
}

const std::vector<std::string>& default_replacement_vocabulary() {
  static const std::vector<std::string> vocab =
      data::list_lines(data::reference_vocab_txt());
  return vocab;
}

// ---- Registry --------------------------------------------------------------

namespace {

struct Registry {
  std::mutex mu;
  std::unordered_map<std::string, BackendFactory> factories;
};

Registry& registry() {
  static Registry r;
  return r;
}

}  // namespace

void register_backend_factory(const std::string& prefix, BackendFactory factory) {
  auto& r = registry();
  std::lock_guard lock(r.mu);
  r.factories[prefix] = std::move(factory);
}

BackendHandle make_backend(const std::string& backend_id, std::size_t max_input_len) {
  if (max_input_len < 2) throw Error(ErrorCode::kInvalidArgument, "max_input_len must be >= 2");
  if (backend_id == "reference") {
    ReferenceBackendOptions options;
    options.max_input_len = max_input_len;
    return make_reference_backend({}, options);
  }
  const auto colon = backend_id.find(':');
  if (colon == std::string::npos || colon + 1 == backend_id.size()) {
    throw Error(ErrorCode::kBackend, "unknown backend id '" + backend_id +
                                         "' (expected 'reference' or '<kind>:<model>')");
  }
  const std::string prefix = backend_id.substr(0, colon);
  BackendFactory factory;
  {
    auto& r = registry();
    std::lock_guard lock(r.mu);
    auto it = r.factories.find(prefix);
    if (it == r.factories.end()) {
      throw Error(ErrorCode::kBackend,
                  "no '" + prefix + "' backend plug-in is available in this build");
    }
    factory = it->second;
  }
  auto handle = factory(backend_id.substr(colon + 1), max_input_len);
  if (!handle) throw Error(ErrorCode::kBackend, "backend factory for '" + backend_id + "' failed");
  return handle;
}

}  // namespace blanc
