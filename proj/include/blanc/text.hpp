#ifndef BLANC_TEXT_HPP
#define BLANC_TEXT_HPP

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace blanc {

/// Number of UTF-8 code points in `s`. Continuation bytes are not counted.
std::size_t utf8_length(std::string_view s);

/// Byte offset of the code point with index `n`, or s.size() past the end.
std::size_t utf8_offset(std::string_view s, std::size_t n);

std::string_view trim(std::string_view s);

bool is_edge_punct(unsigned char c);

/// Strips leading/trailing ASCII punctuation.
std::string_view strip_punct(std::string_view word);

/// Splits text into words: whitespace-separated units, with leading and
/// trailing punctuation split off as one-character words of their own.
/// "Hello, world." -> ["Hello", ",", "world", "."]
std::vector<std::string> split_words(std::string_view text);

/// True when the word contains no alphanumeric or non-ASCII byte.
bool is_punct_word(std::string_view word);

std::string ascii_lower(std::string_view s);

/// Byte spans [begin, end) of each sentence in `text`, trimmed.
std::vector<std::pair<std::size_t, std::size_t>> sentence_spans(
    std::string_view text);

/// Rule-based sentence segmentation. A boundary is a run of . ! ? (optionally
/// followed by closing quotes/brackets), then whitespace, then an uppercase
/// letter, digit, quote or opening bracket. The preceding word must not be a
/// known abbreviation or a single-letter initial. Blank lines always break.
std::vector<std::string> split_sentences(std::string_view text);

/// The abbreviation list used by split_sentences (lowercase, with the dot).
const std::vector<std::string>& abbreviations();

}  // namespace blanc

#endif  // BLANC_TEXT_HPP
