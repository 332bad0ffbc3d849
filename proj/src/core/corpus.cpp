#include "blanc/corpus.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>

#include "blanc/error.hpp"
#include "blanc/text.hpp"
#include "json.hpp"

namespace blanc {

using nlohmann::json;

Document Document::from_text(std::string id, std::string text) {
  Document doc;
  doc.id = std::move(id);
  doc.sentences = split_sentences(text);
  doc.char_len = utf8_length(text);
  doc.text = std::move(text);
  return doc;
}

namespace {

[[noreturn]] void fail(ErrorCode code, const std::string& origin,
                       std::size_t line_no, const std::string& msg) {
  throw Error(code, origin + ":" + std::to_string(line_no) + ": " + msg);
}

std::string required_string(const json& obj, const char* key,
                            const std::string& origin, std::size_t line_no) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    fail(ErrorCode::kParse, origin, line_no, std::string("missing field '") + key + "'");
  }
  if (!it->is_string()) {
    fail(ErrorCode::kParse, origin, line_no, std::string("field '") + key + "' must be a string");
  }
  return it->get<std::string>();
}

}  // namespace

std::vector<CorpusRecord> parse_corpus(const std::string& content,
                                       const std::string& origin) {
  std::vector<CorpusRecord> records;
  std::unordered_map<std::string, std::size_t> by_doc;
  std::set<std::string> summary_ids;

  std::istringstream in(content);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;

    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      fail(ErrorCode::kParse, origin, line_no, std::string("malformed JSON: ") + e.what());
    }
    if (!obj.is_object()) fail(ErrorCode::kParse, origin, line_no, "expected a JSON object");

    const std::string doc_id = required_string(obj, "id", origin, line_no);
    std::string text = required_string(obj, "text", origin, line_no);

    SummaryRecord summary;
    summary.doc_id = doc_id;
    summary.text = required_string(obj, "summary", origin, line_no);

    auto [it, inserted] = by_doc.try_emplace(doc_id, records.size());
    if (inserted) {
      records.push_back({Document::from_text(doc_id, std::move(text)), {}});
    } else if (records[it->second].document.text != text) {
      fail(ErrorCode::kValidation, origin, line_no,
           "document '" + doc_id + "' repeated with different text");
    }
    CorpusRecord& record = records[it->second];

    if (obj.contains("summary_id")) {
      summary.id = required_string(obj, "summary_id", origin, line_no);
    } else {
      summary.id = doc_id + "#" + std::to_string(record.summaries.size());
    }
    if (obj.contains("source")) summary.source = required_string(obj, "source", origin, line_no);

    if (auto hs = obj.find("human_scores"); hs != obj.end() && !hs->is_null()) {
      if (!hs->is_object()) fail(ErrorCode::kParse, origin, line_no, "human_scores must be an object");
      for (const auto& [annotator, v] : hs->items()) {
        if (!v.is_number_integer()) {
          fail(ErrorCode::kValidation, origin, line_no,
               "human score of '" + annotator + "' must be an integer");
        }
        const auto score = v.get<long long>();
        if (score < 0 || score > 4) {
          fail(ErrorCode::kValidation, origin, line_no,
               "human score of '" + annotator + "' outside [0, 4]");
        }
        summary.human_scores[annotator] = static_cast<int>(score);
      }
    }
    if (auto es = obj.find("external_scores"); es != obj.end() && !es->is_null()) {
      if (!es->is_object()) fail(ErrorCode::kParse, origin, line_no, "external_scores must be an object");
      for (const auto& [metric, v] : es->items()) {
        if (!v.is_number()) {
          fail(ErrorCode::kParse, origin, line_no, "external score '" + metric + "' must be a number");
        }
        summary.external_scores[metric] = v.get<double>();
      }
    }

    json extra = json::object();
    for (const auto& [key, v] : obj.items()) {
      static const std::set<std::string> known = {
          "id", "text", "summary", "summary_id", "source", "human_scores", "external_scores"};
      if (!known.count(key)) extra[key] = v;
    }
    if (!extra.empty()) summary.extra_json = extra.dump();

    if (!summary_ids.insert(summary.id).second) {
      fail(ErrorCode::kValidation, origin, line_no, "duplicate summary id '" + summary.id + "'");
    }
    record.summaries.push_back(std::move(summary));
  }
  return records;
}

std::vector<CorpusRecord> load_corpus(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open corpus '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::kIo, "error reading '" + path.string() + "'");
  return parse_corpus(buf.str(), path.string());
}

std::string serialize_corpus(const std::vector<CorpusRecord>& records) {
  std::string out;
  for (const auto& record : records) {
    for (const auto& s : record.summaries) {
      json obj = s.extra_json.empty() ? json::object() : json::parse(s.extra_json);
      obj["id"] = record.document.id;
      obj["text"] = record.document.text;
      obj["summary"] = s.text;
      obj["summary_id"] = s.id;
      if (!s.source.empty()) obj["source"] = s.source;
      if (!s.human_scores.empty()) obj["human_scores"] = s.human_scores;
      if (!s.external_scores.empty()) obj["external_scores"] = s.external_scores;
      out += obj.dump();
      out += '\n';
    }
  }
  return out;
}

void save_corpus(const std::vector<CorpusRecord>& records,
                 const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write '" + path.string() + "'");
  out << serialize_corpus(records);
  if (!out) throw Error(ErrorCode::kIo, "error writing '" + path.string() + "'");
}

double compression_factor(const std::string& summary_text, const Document& document) {
  if (document.char_len == 0) {
    throw Error(ErrorCode::kDegenerateInput,
                "compression factor undefined for empty document '" + document.id + "'");
  }
  return static_cast<double>(utf8_length(summary_text)) /
         static_cast<double>(document.char_len);
}

double compression_factor(const SummaryRecord& summary, const Document& document) {
  return compression_factor(summary.text, document);
}

}  // namespace blanc
