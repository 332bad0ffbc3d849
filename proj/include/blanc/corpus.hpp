#ifndef BLANC_CORPUS_HPP
#define BLANC_CORPUS_HPP

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace blanc {

struct Document {
  std::string id;
  std::string text;
  std::vector<std::string> sentences;
  std::size_t char_len = 0;  // code points, whitespace included

  static Document from_text(std::string id, std::string text);
};

struct SummaryRecord {
  std::string id;
  std::string doc_id;
  std::string text;
  std::string source;
  std::map<std::string, int> human_scores;
  std::map<std::string, double> external_scores;
  // Fields of the input line this loader does not interpret, kept as a
  // serialized JSON object so a save/load cycle does not drop them.
  std::string extra_json;
};

struct CorpusRecord {
  Document document;
  std::vector<SummaryRecord> summaries;
};

/// Reads a JSON-lines corpus. Each line carries `id`, `text`, `summary` and
/// optionally `summary_id`, `source`, `human_scores`, `external_scores`.
/// Lines sharing an `id` are grouped into one record, in first-seen order.
/// Summary ids default to "<doc id>#<n>" with n counting from 0 per document.
std::vector<CorpusRecord> load_corpus(const std::filesystem::path& path);

/// Parses JSONL content from memory; `origin` is used in error messages.
std::vector<CorpusRecord> parse_corpus(const std::string& content,
                                       const std::string& origin = "<memory>");

/// Writes one line per summary in the format load_corpus reads.
void save_corpus(const std::vector<CorpusRecord>& records,
                 const std::filesystem::path& path);
std::string serialize_corpus(const std::vector<CorpusRecord>& records);

/// Summary length over document length, both in characters.
double compression_factor(const SummaryRecord& summary,
                          const Document& document);
double compression_factor(const std::string& summary_text,
                          const Document& document);

}  // namespace blanc

#endif  // BLANC_CORPUS_HPP
