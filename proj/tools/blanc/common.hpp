#ifndef BLANC_TOOLS_COMMON_HPP
#define BLANC_TOOLS_COMMON_HPP

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "blanc/blanc.h"
#include "csv.hpp"
#include "handles.hpp"
#include "json.hpp"

namespace blanc_cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 1,
  kExitCorpus = 2,
  kExitBackend = 3,
};

/// Thrown anywhere in a command; main() turns it into a message and exit code.
class CommandError : public std::runtime_error {
 public:
  CommandError(ExitCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ExitCode code() const { return code_; }

 private:
  ExitCode code_;
};

enum class Variant { kHelp, kTune, kJs };
const char* variant_name(Variant v);

struct RunConfig {
  std::string command;
  nlohmann::json settings;  // fully resolved, written back into the manifest
  std::string in;
  std::filesystem::path out;
  std::string backend;
  std::size_t max_input_len = 512;
  std::vector<Variant> variants;
  blanc_params params{};
  unsigned jobs = 1;

  // correlate only
  std::string human;
  std::string corpus;
  std::size_t group = 3;
  std::string method;
  std::vector<double> value_map;  // empty: identity
  std::vector<std::string> blend;
  std::vector<double> weights;
};

/// One (document, summary) pair of a loaded corpus.
struct Pair {
  std::size_t doc = 0;
  std::size_t summary = 0;
  std::string doc_id;
  std::string summary_id;
  const char* doc_text = nullptr;
  const char* summary_text = nullptr;
};

std::vector<Pair> corpus_pairs(const blanc_corpus* corpus);

/// Runs body(i) for i in [0, n) on `jobs` threads. Callers write into
/// per-index slots so output order never depends on scheduling.
void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& body);

std::string params_fingerprint(const blanc_params& params);
nlohmann::json params_json(const blanc_params& params);

/// FNV-1a 64 over the file's bytes, 16 hex digits.
std::string file_fingerprint(const std::string& path);

void prepare_output_dir(const std::filesystem::path& dir);
void write_text(const std::filesystem::path& path, const std::string& content);
void write_csv(const std::filesystem::path& path, const Row& header, const std::vector<Row>& rows);

/// Writes manifest.json: everything needed to rerun the command.
void write_manifest(const RunConfig& cfg, const std::vector<std::string>& outputs,
                    const nlohmann::json& extra);

void log_failure(const std::string& where, blanc_status status, const std::string& message);

CorpusPtr load_corpus_or_exit(const std::string& path);
BackendPtr create_backend_or_exit(const RunConfig& cfg);

int cmd_score(const RunConfig& cfg);
int cmd_validate(const RunConfig& cfg);
int cmd_correlate(const RunConfig& cfg);

}  // namespace blanc_cli

#endif  // BLANC_TOOLS_COMMON_HPP
