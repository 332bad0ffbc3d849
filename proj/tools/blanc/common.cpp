#include "common.hpp"

#include <atomic>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>

#include "handles.hpp"

namespace blanc_cli {

namespace fs = std::filesystem;

const char* variant_name(Variant v) {
  switch (v) {
    case Variant::kHelp: return "help";
    case Variant::kTune: return "tune";
    case Variant::kJs: return "js";
  }
  return "?";
}

std::vector<Pair> corpus_pairs(const blanc_corpus* corpus) {
  std::vector<Pair> pairs;
  const std::size_t docs = blanc_corpus_document_count(corpus);
  for (std::size_t d = 0; d < docs; ++d) {
    const std::size_t n = blanc_corpus_summary_count(corpus, d);
    for (std::size_t s = 0; s < n; ++s) {
      pairs.push_back({d, s, blanc_corpus_document_id(corpus, d),
                       blanc_corpus_summary_id(corpus, d, s),
                       blanc_corpus_document_text(corpus, d),
                       blanc_corpus_summary_text(corpus, d, s)});
    }
  }
  return pairs;
}

void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& body) {
  if (jobs <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> workers;
  const unsigned count = static_cast<unsigned>(std::min<std::size_t>(jobs, n));
  for (unsigned w = 0; w < count; ++w) {
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) body(i);
    });
  }
  for (auto& t : workers) t.join();
}

std::string params_fingerprint(const blanc_params& params) {
  char buf[17];
  check(blanc_params_fingerprint(&params, buf));
  return buf;
}

nlohmann::json params_json(const blanc_params& params) {
  return nlohmann::json::parse(fetch_text([&](char* b, std::size_t cap, std::size_t* len) {
    return blanc_params_to_json(&params, b, cap, len);
  }));
}

std::string file_fingerprint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return "";
  std::uint64_t h = 0xcbf29ce484222325ULL;
  char buf[1 << 16];
  while (in) {
    in.read(buf, sizeof buf);
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 0x100000001b3ULL;
    }
  }
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(h));
  return hex;
}

void prepare_output_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw CommandError(kExitConfig, "cannot create output directory '" + dir.string() + "'");
  }
}

void write_text(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
  out.close();
  if (!out) throw CommandError(kExitConfig, "cannot write '" + path.string() + "'");
}

void write_csv(const fs::path& path, const Row& header, const std::vector<Row>& rows) {
  std::string text = csv_line(header);
  for (const auto& r : rows) text += csv_line(r);
  write_text(path, text);
}

void write_manifest(const RunConfig& cfg, const std::vector<std::string>& outputs,
                    const nlohmann::json& extra) {
  nlohmann::json m;
  m["tool"] = "blanc";
  m["version"] = blanc_version();
  m["command"] = cfg.command;
  m["config"] = cfg.settings;
  m["params_fingerprint"] = params_fingerprint(cfg.params);
  m["input"] = {{"path", cfg.in}, {"fingerprint", file_fingerprint(cfg.in)}};
  m["outputs"] = outputs;
  for (const auto& [k, v] : extra.items()) m[k] = v;
  write_text(cfg.out / "manifest.json", m.dump(2) + "\n");
}

void log_failure(const std::string& where, blanc_status status, const std::string& message) {
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  std::cerr << "blanc: " << where << ": " << blanc_status_name(status);
  if (!message.empty()) std::cerr << ": " << message;
  std::cerr << "\n";
}

}  // namespace blanc_cli
