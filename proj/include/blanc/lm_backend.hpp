#ifndef BLANC_LM_BACKEND_HPP
#define BLANC_LM_BACKEND_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

namespace blanc {

inline constexpr const char* kMaskToken = "[MASK]";
inline constexpr const char* kUnkToken = "[UNK]";
inline constexpr const char* kClsToken = "[CLS]";
inline constexpr const char* kSepToken = "[SEP]";
inline constexpr std::size_t kDefaultMaxInputLen = 512;

bool is_sentinel(const std::string& token);

/// Half-open token range [begin, end) belonging to one source word.
struct WordSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::size_t size() const { return end - begin; }
  bool operator==(const WordSpan&) const = default;
};

struct TokenSequence {
  std::vector<std::string> tokens;
  std::vector<WordSpan> word_spans;

  std::size_t size() const { return tokens.size(); }
  bool empty() const { return tokens.empty(); }
  /// Throws kValidation unless spans tile [0, size()) in order.
  void check() const;
};

enum class CorruptionKind { kMasked, kRandom, kUnchanged };

/// Positions are token indices into `input`. std::map keeps iteration
/// ordered, which keeps scoring loops deterministic.
struct MaskedSample {
  TokenSequence input;
  std::map<std::size_t, std::string> targets;
  std::map<std::size_t, CorruptionKind> corruption_kinds;
};

using Predictions = std::map<std::size_t, std::string>;

class Tokenizer {
 public:
  virtual ~Tokenizer() = default;
  /// Tokens for a list of words; one word span per word, in order.
  virtual TokenSequence tokenize(std::span<const std::string> words) const = 0;
};

/// Masked-token predictor. Implementations must keep predict_masked safe for
/// concurrent calls; fine_tune returns a new model and leaves `*this` as is.
class MaskedLm {
 public:
  virtual ~MaskedLm() = default;

  virtual std::string model_id() const = 0;
  virtual std::size_t max_input_len() const = 0;
  virtual bool deterministic() const = 0;
  virtual const Tokenizer& tokenizer() const = 0;
  /// Tokens eligible as random replacements (no sentinels).
  virtual const std::vector<std::string>& vocabulary() const = 0;

  /// One top-1 prediction per target position of `sample`.
  /// Throws kLength when the input exceeds max_input_len().
  Predictions predict_masked(const MaskedSample& sample) const;

  virtual bool supports_tuning() const = 0;
  std::shared_ptr<const MaskedLm> fine_tune(
      std::span<const MaskedSample> samples, int passes, std::uint64_t seed) const;

 protected:
  virtual Predictions do_predict(const MaskedSample& sample) const = 0;
  virtual std::shared_ptr<const MaskedLm> do_fine_tune(
      std::span<const MaskedSample> samples, int passes,
      std::uint64_t seed) const = 0;
};

using BackendHandle = std::shared_ptr<const MaskedLm>;

/// Lowercasing word tokenizer. With a vocabulary, words outside it (and at
/// least two code points long) are split at the code-point midpoint into
/// "head" and "##tail". Without one, every word is a single token.
class ReferenceTokenizer final : public Tokenizer {
 public:
  explicit ReferenceTokenizer(
      std::optional<std::unordered_set<std::string>> vocabulary = std::nullopt);
  TokenSequence tokenize(std::span<const std::string> words) const override;
  std::vector<std::string> word_pieces(const std::string& word) const;

 private:
  std::optional<std::unordered_set<std::string>> vocabulary_;
};

struct ReferenceBackendOptions {
  std::size_t max_input_len = kDefaultMaxInputLen;
  /// Split vocabulary for the tokenizer; also the random-token pool when set.
  std::optional<std::vector<std::string>> vocabulary;
};

/// The "copycat" backend: a masked token is recovered iff its ground-truth
/// string occurs at another position of the input, or is in memory. Tuning
/// adds every target token of the tuning samples to memory.
class ReferenceBackend final : public MaskedLm {
 public:
  ReferenceBackend(std::set<std::string> memory, ReferenceBackendOptions options);

  std::string model_id() const override { return "reference"; }
  std::size_t max_input_len() const override { return options_.max_input_len; }
  bool deterministic() const override { return true; }
  const Tokenizer& tokenizer() const override { return tokenizer_; }
  const std::vector<std::string>& vocabulary() const override;
  bool supports_tuning() const override { return true; }
  const std::set<std::string>& memory() const { return memory_; }

 protected:
  Predictions do_predict(const MaskedSample& sample) const override;
  BackendHandle do_fine_tune(std::span<const MaskedSample> samples, int passes,
                             std::uint64_t seed) const override;

 private:
  std::set<std::string> memory_;
  ReferenceBackendOptions options_;
  ReferenceTokenizer tokenizer_;
};

BackendHandle make_reference_backend(std::set<std::string> memory = {},
                                     ReferenceBackendOptions options = {});

/// Built-in pool of common English words used for random replacements when
/// a backend has no vocabulary of its own.
const std::vector<std::string>& default_replacement_vocabulary();

using BackendFactory =
    std::function<BackendHandle(const std::string& model_name, std::size_t max_input_len)>;

/// Registers a factory for ids of the form "<prefix>:<model-name>".
void register_backend_factory(const std::string& prefix, BackendFactory factory);

/// Resolves "reference" or "<prefix>:<model>". Unknown ids throw kBackend.
BackendHandle make_backend(const std::string& backend_id,
                           std::size_t max_input_len = kDefaultMaxInputLen);

}  // namespace blanc

#endif  // BLANC_LM_BACKEND_HPP
