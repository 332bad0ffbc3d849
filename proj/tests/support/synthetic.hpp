#ifndef BLANC_TESTS_SYNTHETIC_HPP
#define BLANC_TESTS_SYNTHETIC_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "blanc/corpus.hpp"

namespace blanc::testing {

/// Free-form random text: mixed word lengths, commas, capitalised sentence
/// starts, some repeated words. For invariants, not for shape checks.
std::string random_text(std::uint64_t seed, std::size_t sentences);

struct SyntheticPair {
  Document document;
  std::string summary;  // three sentences
};

/// Documents mix frequent short function words with long content words
/// unique to the document; the summary is three sentences built from
/// content words of the document, so under the copycat backend each summary
/// word helps recover exactly one masked document word.
std::vector<SyntheticPair> synthetic_pairs(std::size_t count, std::uint64_t seed);

/// The same pairs serialized as a JSONL corpus (ids d0, d1, ...).
std::string synthetic_corpus_jsonl(std::size_t count, std::uint64_t seed);

}  // namespace blanc::testing

#endif  // BLANC_TESTS_SYNTHETIC_HPP
