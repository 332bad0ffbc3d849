#include "blanc/text.hpp"

#include <algorithm>
#include <cctype>

#include "embedded_data.hpp"

namespace blanc {

namespace {

bool is_space(unsigned char c) { return std::isspace(c) != 0; }

bool is_closing(unsigned char c) {
  return c == '"' || c == '\'' || c == ')' || c == ']' || c == '}';
}

bool is_opening(unsigned char c) {
  return c == '"' || c == '\'' || c == '(' || c == '[' || c == '{';
}

// Curly quotes are three bytes: E2 80 98/99/9C/9D.
bool curly_quote_at(std::string_view s, std::size_t i, bool opening) {
  if (i + 3 > s.size()) return false;
  if (static_cast<unsigned char>(s[i]) != 0xE2 ||
      static_cast<unsigned char>(s[i + 1]) != 0x80) {
    return false;
  }
  const auto c = static_cast<unsigned char>(s[i + 2]);
  return opening ? (c == 0x98 || c == 0x9C) : (c == 0x99 || c == 0x9D);
}

bool starts_sentence(std::string_view s, std::size_t i) {
  const auto c = static_cast<unsigned char>(s[i]);
  if (std::isupper(c) || std::isdigit(c) || is_opening(c)) return true;
  return curly_quote_at(s, i, true);
}

bool is_abbreviation(std::string_view word_with_dot) {
  std::string w = ascii_lower(word_with_dot);
  // Leading brackets/quotes are not part of the abbreviation.
  std::size_t b = 0;
  while (b < w.size() && is_opening(static_cast<unsigned char>(w[b]))) ++b;
  w.erase(0, b);
  if (w.size() == 2 && std::isalpha(static_cast<unsigned char>(w[0]))) {
    return true;  // single-letter initial, "J."
  }
  const auto& list = abbreviations();
  return std::find(list.begin(), list.end(), w) != list.end();
}

}  // namespace

std::size_t utf8_length(std::string_view s) {
  std::size_t n = 0;
  for (unsigned char c : s) {
    if ((c & 0xC0) != 0x80) ++n;
  }
  return n;
}

std::size_t utf8_offset(std::string_view s, std::size_t n) {
  std::size_t seen = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if ((static_cast<unsigned char>(s[i]) & 0xC0) != 0x80) {
      if (seen == n) return i;
      ++seen;
    }
  }
  return s.size();
}

std::string_view trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && is_space(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && is_space(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

bool is_edge_punct(unsigned char c) { return c < 0x80 && std::ispunct(c) != 0; }

std::string_view strip_punct(std::string_view word) {
  std::size_t b = 0;
  std::size_t e = word.size();
  while (b < e && is_edge_punct(static_cast<unsigned char>(word[b]))) ++b;
  while (e > b && is_edge_punct(static_cast<unsigned char>(word[e - 1]))) --e;
  return word.substr(b, e - b);
}

bool is_punct_word(std::string_view word) {
  return std::all_of(word.begin(), word.end(), [](char c) {
    const auto u = static_cast<unsigned char>(c);
    return u < 0x80 && !std::isalnum(u);
  });
}

std::vector<std::string> split_words(std::string_view text) {
  std::vector<std::string> words;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t j = i;
    while (j < text.size() && !is_space(static_cast<unsigned char>(text[j]))) ++j;
    if (j == i) break;
    const std::string_view chunk = text.substr(i, j - i);
    const std::string_view core = strip_punct(chunk);
    if (core.empty()) {
      for (char c : chunk) words.emplace_back(1, c);
    } else {
      const std::size_t lead = static_cast<std::size_t>(core.data() - chunk.data());
      for (std::size_t k = 0; k < lead; ++k) words.emplace_back(1, chunk[k]);
      words.emplace_back(core);
      for (std::size_t k = lead + core.size(); k < chunk.size(); ++k) {
        words.emplace_back(1, chunk[k]);
      }
    }
    i = j;
  }
  return words;
}

std::string ascii_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    const auto u = static_cast<unsigned char>(c);
    if (u < 0x80) c = static_cast<char>(std::tolower(u));
  }
  return out;
}

const std::vector<std::string>& abbreviations() {
  static const std::vector<std::string> list =
      data::list_lines(data::abbreviations_txt());
  return list;
}

std::vector<std::pair<std::size_t, std::size_t>> sentence_spans(
    std::string_view text) {
  std::vector<std::size_t> breaks;  // exclusive end of each sentence
  const std::size_t n = text.size();
  std::size_t i = 0;
  while (i < n) {
    const auto c = static_cast<unsigned char>(text[i]);
    if (c == '\n') {
      // Blank line: newline, optional horizontal space, newline.
      std::size_t j = i + 1;
      while (j < n && (text[j] == ' ' || text[j] == '\t' || text[j] == '\r')) ++j;
      if (j < n && text[j] == '\n') {
        breaks.push_back(i);
        i = j + 1;
        continue;
      }
      ++i;
      continue;
    }
    if (c != '.' && c != '!' && c != '?') {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < n && (text[j] == '.' || text[j] == '!' || text[j] == '?')) ++j;
    const bool single_dot = (j == i + 1 && c == '.');
    for (;;) {
      if (j < n && is_closing(static_cast<unsigned char>(text[j]))) {
        ++j;
      } else if (curly_quote_at(text, j, false)) {
        j += 3;
      } else {
        break;
      }
    }
    const std::size_t end = j;
    if (j >= n || !is_space(static_cast<unsigned char>(text[j]))) {
      i = end > i ? end : i + 1;
      continue;
    }
    while (j < n && is_space(static_cast<unsigned char>(text[j]))) ++j;
    if (j >= n || !starts_sentence(text, j)) {
      i = end;
      continue;
    }
    if (single_dot) {
      std::size_t w = i;
      while (w > 0 && !is_space(static_cast<unsigned char>(text[w - 1]))) --w;
      if (is_abbreviation(text.substr(w, i + 1 - w))) {
        i = end;
        continue;
      }
    }
    breaks.push_back(end);
    i = end;
  }
  breaks.push_back(n);

  std::vector<std::pair<std::size_t, std::size_t>> spans;
  std::size_t start = 0;
  for (std::size_t b : breaks) {
    std::size_t s = start;
    std::size_t e = b;
    while (s < e && is_space(static_cast<unsigned char>(text[s]))) ++s;
    while (e > s && is_space(static_cast<unsigned char>(text[e - 1]))) --e;
    if (e > s) spans.emplace_back(s, e);
    start = b;
  }
  return spans;
}

std::vector<std::string> split_sentences(std::string_view text) {
  std::vector<std::string> out;
  for (const auto& [b, e] : sentence_spans(text)) {
    out.emplace_back(text.substr(b, e - b));
  }
  return out;
}

}  // namespace blanc

namespace blanc::data {

std::vector<std::string> list_lines(std::string_view text) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    const std::string_view line = trim(text.substr(pos, nl - pos));
    if (!line.empty() && line.front() != '#') out.emplace_back(line);
    pos = nl + 1;
  }
  return out;
}

}  // namespace blanc::data
