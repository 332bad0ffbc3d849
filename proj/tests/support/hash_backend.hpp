#ifndef BLANC_TESTS_HASH_BACKEND_HPP
#define BLANC_TESTS_HASH_BACKEND_HPP

#include <cstdint>
#include <memory>
#include <string>

#include "blanc/lm_backend.hpp"
#include "blanc/rng.hpp"

namespace blanc::testing {

/// Deterministic test model: whether a target is recovered depends on a hash
/// of (salt, whole input, position), so assisted and base inputs disagree in
/// both directions. Tuning returns a model with a different salt.
class HashBackend final : public MaskedLm {
 public:
  explicit HashBackend(std::uint64_t salt, int hit_per_mille = 500)
      : salt_(salt), hit_per_mille_(hit_per_mille) {}

  std::string model_id() const override { return "hash"; }
  std::size_t max_input_len() const override { return 512; }
  bool deterministic() const override { return true; }
  const Tokenizer& tokenizer() const override { return tokenizer_; }
  const std::vector<std::string>& vocabulary() const override {
    return default_replacement_vocabulary();
  }
  bool supports_tuning() const override { return true; }

 protected:
  Predictions do_predict(const MaskedSample& sample) const override {
    std::uint64_t h = splitmix64(salt_);
    for (const auto& t : sample.input.tokens) {
      for (unsigned char c : t) h = splitmix64(h ^ c);
      h = splitmix64(h ^ 0x2f);
    }
    Predictions out;
    for (const auto& [pos, truth] : sample.targets) {
      const bool hit = static_cast<int>(splitmix64(h ^ pos) % 1000) < hit_per_mille_;
      out[pos] = hit ? truth : std::string(kUnkToken);
    }
    return out;
  }

  std::shared_ptr<const MaskedLm> do_fine_tune(std::span<const MaskedSample> samples, int passes,
                                               std::uint64_t seed) const override {
    std::uint64_t salt = splitmix64(salt_ ^ seed ^ static_cast<std::uint64_t>(passes));
    salt = splitmix64(salt ^ samples.size());
    return std::make_shared<HashBackend>(salt, hit_per_mille_);
  }

 private:
  std::uint64_t salt_;
  int hit_per_mille_;
  ReferenceTokenizer tokenizer_;
};

}  // namespace blanc::testing

#endif  // BLANC_TESTS_HASH_BACKEND_HPP
