// blanc: batch scoring, validation experiments and correlation tables.
//
// Exit codes: 0 success (per-pair failures are logged and recorded in the
// CSV status column), 1 configuration error, 2 corpus/input error,
// 3 backend error.

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "common.hpp"
#include "handles.hpp"

namespace blanc_cli {
namespace {

using nlohmann::json;

enum class Kind { kString, kUInt, kInt, kDouble, kStringList, kDoubleList };

const std::map<std::string, Kind>& setting_kinds() {
  static const std::map<std::string, Kind> kinds = {
      {"in", Kind::kString},          {"out", Kind::kString},
      {"backend", Kind::kString},     {"max_input_len", Kind::kUInt},
      {"variant", Kind::kString},     {"guard", Kind::kString},
      {"mode", Kind::kString},        {"M", Kind::kInt},
      {"Lmin", Kind::kInt},           {"pmask", Kind::kDouble},
      {"passes", Kind::kInt},         {"seed", Kind::kUInt},
      {"jobs", Kind::kUInt},          {"human", Kind::kString},
      {"corpus", Kind::kString},      {"group", Kind::kUInt},
      {"method", Kind::kString},      {"value_map", Kind::kDoubleList},
      {"blend", Kind::kStringList},   {"weights", Kind::kDoubleList},
  };
  return kinds;
}

[[noreturn]] void config_error(const std::string& msg) { throw CommandError(kExitConfig, msg); }

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    out.push_back(b == std::string::npos ? "" : item.substr(b, e - b + 1));
  }
  return out;
}

double to_double(const std::string& key, const std::string& s) {
  auto v = parse_double(s);
  if (!v) config_error("--" + key + ": '" + s + "' is not a number");
  return *v;
}

json from_flag(const std::string& key, Kind kind, const std::string& raw) {
  switch (kind) {
    case Kind::kString: return raw;
    case Kind::kUInt:
    case Kind::kInt: {
      std::size_t used = 0;
      try {
        if (kind == Kind::kUInt) {
          if (!raw.empty() && raw[0] == '-') throw std::invalid_argument("negative");
          const unsigned long long v = std::stoull(raw, &used);
          if (used == raw.size()) return v;
        } else {
          const long long v = std::stoll(raw, &used);
          if (used == raw.size()) return v;
        }
      } catch (const std::exception&) {
      }
      config_error("--" + key + ": '" + raw + "' is not a valid integer");
    }
    case Kind::kDouble: return to_double(key, raw);
    case Kind::kStringList: return split_list(raw);
    case Kind::kDoubleList: {
      json arr = json::array();
      for (const auto& item : split_list(raw)) arr.push_back(to_double(key, item));
      return arr;
    }
  }
  return raw;
}

void check_json_kind(const std::string& key, Kind kind, const json& v) {
  bool ok = false;
  switch (kind) {
    case Kind::kString: ok = v.is_string(); break;
    case Kind::kUInt: ok = v.is_number_unsigned(); break;
    case Kind::kInt: ok = v.is_number_integer(); break;
    case Kind::kDouble: ok = v.is_number(); break;
    case Kind::kStringList:
      ok = v.is_array() && std::all_of(v.begin(), v.end(), [](const json& x) { return x.is_string(); });
      break;
    case Kind::kDoubleList:
      ok = v.is_array() && std::all_of(v.begin(), v.end(), [](const json& x) { return x.is_number(); });
      break;
  }
  if (!ok) config_error("config: key '" + key + "' has the wrong type");
}

json load_config_file(const std::string& path, const std::string& command) {
  std::ifstream in(path, std::ios::binary);
  if (!in) config_error("cannot open config file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    config_error("config file '" + path + "': " + e.what());
  }
  if (!j.is_object()) config_error("config file '" + path + "' must hold a JSON object");
  // A run manifest carries its settings under "config".
  if (j.contains("config")) {
    if (j.contains("command") && j["command"] != command) {
      std::cerr << "blanc: warning: manifest was written by '" << j["command"].get<std::string>()
                << "', running '" << command << "'\n";
    }
    j = j["config"];
    if (!j.is_object()) config_error("config file '" + path + "': 'config' must be an object");
  }
  for (const auto& [key, v] : j.items()) {
    auto it = setting_kinds().find(key);
    if (it == setting_kinds().end()) config_error("config: unknown key '" + key + "'");
    check_json_kind(key, it->second, v);
  }
  return j;
}

json defaults_for(const std::string& command) {
  blanc_params p;
  blanc_params_init(&p);
  json d = {
      {"in", ""},
      {"out", "blanc_out"},
      {"backend", "reference"},
      {"max_input_len", 512u},
      {"variant", "help"},
      {"jobs", 1u},
  };
  const json pj = params_json(p);
  for (const auto& [k, v] : pj.items()) d[k] = v;
  if (command == "correlate") {
    d["human"] = "";
    d["corpus"] = "";
    d["group"] = 3u;
    d["method"] = "both";
    d["value_map"] = json::array();
    d["blend"] = json::array();
    d["weights"] = {0.5, 0.5};
    d.erase("backend");
    d.erase("max_input_len");
    d.erase("variant");
    for (const char* k : {"M", "Lmin", "mode", "pmask", "passes", "guard", "seed"}) d.erase(k);
  }
  return d;
}

std::vector<Variant> parse_variants(const std::string& s) {
  std::vector<Variant> out;
  auto add = [&](Variant v) {
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  };
  for (const auto& item : split_list(s)) {
    if (item == "help") add(Variant::kHelp);
    else if (item == "tune") add(Variant::kTune);
    else if (item == "js") add(Variant::kJs);
    else if (item == "all") {
      add(Variant::kHelp);
      add(Variant::kTune);
      add(Variant::kJs);
    } else {
      config_error("--variant: unknown variant '" + item + "' (help|tune|js|all)");
    }
  }
  if (out.empty()) config_error("--variant: empty variant set");
  return out;
}

RunConfig resolve(const std::string& command, const json& settings) {
  RunConfig cfg;
  cfg.command = command;
  cfg.settings = settings;
  cfg.in = settings["in"].get<std::string>();
  if (cfg.in.empty()) config_error("--in is required");
  cfg.out = settings["out"].get<std::string>();
  if (cfg.out.empty()) config_error("--out must not be empty");
  const auto jobs = settings["jobs"].get<std::uint64_t>();
  if (jobs < 1 || jobs > 1024) config_error("--jobs must be in [1, 1024]");
  cfg.jobs = static_cast<unsigned>(jobs);

  if (command == "correlate") {
    cfg.human = settings["human"].get<std::string>();
    cfg.corpus = settings["corpus"].get<std::string>();
    if (cfg.human.empty() && cfg.corpus.empty()) {
      config_error("correlate needs human scores: --human <csv> or --corpus <jsonl>");
    }
    cfg.group = settings["group"].get<std::size_t>();
    cfg.method = settings["method"].get<std::string>();
    if (cfg.method != "pearson" && cfg.method != "spearman" && cfg.method != "both") {
      config_error("--method must be pearson, spearman or both");
    }
    cfg.value_map = settings["value_map"].get<std::vector<double>>();
    if (!cfg.value_map.empty() && cfg.value_map.size() != 5) {
      config_error("--value-map needs 5 values (labels 0..4)");
    }
    cfg.blend = settings["blend"].get<std::vector<std::string>>();
    cfg.weights = settings["weights"].get<std::vector<double>>();
    if (!cfg.blend.empty() && cfg.blend.size() != 2) config_error("--blend takes two estimators");
    if (cfg.weights.size() != 2) config_error("--weights takes two numbers");
    blanc_params_init(&cfg.params);
    return cfg;
  }

  cfg.backend = settings["backend"].get<std::string>();
  cfg.max_input_len = settings["max_input_len"].get<std::size_t>();
  if (cfg.max_input_len < 2) config_error("--max-input-len must be at least 2");
  cfg.variants = parse_variants(settings["variant"].get<std::string>());

  json pj = json::object();
  for (const char* k : {"M", "Lmin", "mode", "pmask", "passes", "guard", "seed"}) pj[k] = settings[k];
  if (blanc_params_from_json(pj.dump().c_str(), &cfg.params) != BLANC_OK) {
    config_error(std::string("invalid parameters: ") + blanc_last_error());
  }
  return cfg;
}

struct FlagSet {
  std::map<std::string, std::pair<CLI::Option*, std::string>> flags;

  void add(CLI::App* app, const std::string& key, const std::string& flag, const std::string& help) {
    auto& slot = flags[key];
    slot.first = app->add_option(flag, slot.second, help);
  }

  json explicit_settings() const {
    json j = json::object();
    for (const auto& [key, slot] : flags) {
      if (slot.first->count() > 0) j[key] = from_flag(key, setting_kinds().at(key), slot.second);
    }
    return j;
  }
};

void add_run_flags(CLI::App* app, FlagSet& fs, bool scoring) {
  fs.add(app, "in", "--in", scoring ? "Corpus JSONL" : "Score CSV written by 'score'");
  fs.add(app, "out", "--out", "Output directory");
  fs.add(app, "jobs", "--jobs", "Worker threads (default 1)");
  if (!scoring) return;
  fs.add(app, "backend", "--backend", "reference | <kind>:<model>");
  fs.add(app, "max_input_len", "--max-input-len", "Backend input limit in tokens (default 512)");
  fs.add(app, "variant", "--variant", "help | tune | js | all, or a comma list");
  fs.add(app, "guard", "--guard", "off | skip_sentence | drop_copy");
  fs.add(app, "mode", "--mode", "word | token");
  fs.add(app, "M", "--M", "Masking period (default 6)");
  fs.add(app, "Lmin", "--Lmin", "Minimum maskable word length (default 4)");
  fs.add(app, "pmask", "--pmask", "Tuning mask fraction (default 0.15)");
  fs.add(app, "passes", "--passes", "Tuning passes over the summary (default 10)");
  fs.add(app, "seed", "--seed", "Base seed (default 0)");
}

}  // namespace
}  // namespace blanc_cli

int main(int argc, char** argv) {
  using namespace blanc_cli;

  CLI::App app{"Summary quality estimation with masked-token reconstruction"};
  app.set_version_flag("--version", std::string(blanc_version()));
  app.require_subcommand(1);

  std::string config_path;
  struct Sub {
    CLI::App* app;
    FlagSet flags;
  };
  std::map<std::string, Sub> subs;

  auto* score = app.add_subcommand("score", "Score every (document, summary) pair");
  auto* validate = app.add_subcommand("validate", "Random-words, random-sentences and deterioration experiments");
  auto* correlate = app.add_subcommand("correlate", "Correlate scores with human judgments, length and compression");
  subs["score"].app = score;
  subs["validate"].app = validate;
  subs["correlate"].app = correlate;
  for (auto& [name, sub] : subs) {
    sub.app->add_option("--config", config_path, "JSON config file or run manifest; flags override it");
    add_run_flags(sub.app, sub.flags, name != "correlate");
  }
  auto& cf = subs["correlate"].flags;
  cf.add(correlate, "human", "--human", "Human scores CSV: summary_id,annotator,score");
  cf.add(correlate, "corpus", "--corpus", "Corpus JSONL with human_scores / external_scores");
  cf.add(correlate, "group", "--group", "Annotator group size for the split table (default 3)");
  cf.add(correlate, "method", "--method", "pearson | spearman | both (default both)");
  cf.add(correlate, "value_map", "--value-map", "Five comma-separated values for labels 0..4");
  cf.add(correlate, "blend", "--blend", "Two estimators to blend, e.g. help,js");
  cf.add(correlate, "weights", "--weights", "Blend weights (default 0.5,0.5)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  std::string command;
  for (const auto& [name, sub] : subs) {
    if (sub.app->parsed()) command = name;
  }

  try {
    nlohmann::json settings = defaults_for(command);
    if (!config_path.empty()) {
      const nlohmann::json file = load_config_file(config_path, command);
      for (const auto& [k, v] : file.items()) {
        if (settings.contains(k)) settings[k] = v;
      }
    }
    const nlohmann::json flags = subs[command].flags.explicit_settings();
    for (const auto& [k, v] : flags.items()) settings[k] = v;
    const RunConfig cfg = resolve(command, settings);

    if (command == "score") return cmd_score(cfg);
    if (command == "validate") return cmd_validate(cfg);
    return cmd_correlate(cfg);
  } catch (const CommandError& e) {
    std::cerr << "blanc: " << e.what() << "\n";
    return e.code();
  } catch (const ApiError& e) {
    std::cerr << "blanc: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "blanc: " << e.what() << "\n";
    return kExitConfig;
  }
}
