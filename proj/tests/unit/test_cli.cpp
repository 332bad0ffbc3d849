#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "synthetic.hpp"

namespace fs = std::filesystem;

namespace {

const fs::path& workdir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("blanc_cli_test_" + std::to_string(::getpid()));
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

int run(const std::string& args) {
  const std::string cmd = "cd '" + workdir().string() + "' && '" BLANC_CLI_PATH "' " + args + " 2>stderr.txt";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(workdir() / p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write(const fs::path& p, const std::string& text) {
  std::ofstream out(workdir() / p, std::ios::binary);
  out << text;
}

std::vector<std::vector<std::string>> csv(const fs::path& p) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(slurp(p));
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> row;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) row.push_back(cell);
    if (!line.empty() && line.back() == ',') row.push_back("");
    rows.push_back(row);
  }
  return rows;
}

std::size_t col(const std::vector<std::string>& header, const std::string& name) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  FAIL("no column " << name);
  return 0;
}

void write_small_corpus() {
  write("small.jsonl",
        "{\"id\":\"d1\",\"text\":\"wolves howled loudly overnight\",\"summary\":\"wolves howled at night\"}\n"
        "{\"id\":\"d2\",\"text\":\"The river flooded the valley. Farmers moved cattle uphill.\","
        "\"summary\":\"River flooded valley.\"}\n"
        "{\"id\":\"d2\",\"text\":\"The river flooded the valley. Farmers moved cattle uphill.\","
        "\"summary\":\"the of and\"}\n");
}

}  // namespace

TEST_CASE("score writes one row per summary and a manifest") {
  write_small_corpus();
  REQUIRE(run("score --variant help --backend reference --in small.jsonl --out s1") == 0);
  const auto rows = csv("s1/scores.csv");
  REQUIRE(rows.size() == 4);
  CHECK(rows[0][0] == "doc_id");
  const std::size_t v = col(rows[0], "value");
  CHECK(rows[1][v] == "0.5");
  CHECK(rows[1][col(rows[0], "S01")] == "2");
  const auto manifest = nlohmann::json::parse(slurp("s1/manifest.json"));
  CHECK(manifest["command"] == "score");
  CHECK(manifest["config"]["M"] == 6);
  CHECK(manifest["backend"] == "reference");
  CHECK(manifest["input"]["fingerprint"].get<std::string>().size() == 16);
}

TEST_CASE("score --variant all gives help, tune and js rows") {
  write_small_corpus();
  REQUIRE(run("score --variant all --in small.jsonl --out s2") == 0);
  const auto rows = csv("s2/scores.csv");
  REQUIRE(rows.size() == 10);
  const std::size_t var = col(rows[0], "variant");
  CHECK(rows[1][var] == "help");
  CHECK(rows[2][var] == "tune");
  CHECK(rows[3][var] == "js");
  // "the of and" has no terms left for JS: flagged, run continues.
  CHECK(rows[9][col(rows[0], "status")] == "degenerate_input");
  CHECK(rows[9][col(rows[0], "value")] == "");
}

TEST_CASE("rerun from the manifest is byte-identical at any parallelism") {
  write("synth.jsonl", blanc::testing::synthetic_corpus_jsonl(12, 5));
  REQUIRE(run("score --variant all --in synth.jsonl --out r1 --seed 77") == 0);
  REQUIRE(run("score --config r1/manifest.json --out r2 --jobs 4") == 0);
  REQUIRE(run("score --config r1/manifest.json --out r3 --jobs 3") == 0);
  CHECK(slurp("r1/scores.csv") == slurp("r2/scores.csv"));
  CHECK(slurp("r1/scores.csv") == slurp("r3/scores.csv"));
  CHECK(nlohmann::json::parse(slurp("r2/manifest.json"))["config"]["seed"] == 77);
}

TEST_CASE("config precedence: flags override the file") {
  write_small_corpus();
  write("cfg.json", R"({"M": 3, "Lmin": 5, "variant": "help"})");
  REQUIRE(run("score --config cfg.json --M 5 --in small.jsonl --out c1") == 0);
  const auto m = nlohmann::json::parse(slurp("c1/manifest.json"));
  CHECK(m["config"]["M"] == 5);
  CHECK(m["config"]["Lmin"] == 5);
}

TEST_CASE("exit codes") {
  write_small_corpus();
  CHECK(run("score --in small.jsonl --out e1 --M zero") == 1);
  CHECK(run("score --in small.jsonl --out e1 --M 0") == 1);
  CHECK(run("score --out e1") == 1);
  CHECK(run("score --in small.jsonl --out e1 --variant bogus") == 1);
  write("badcfg.json", R"({"colour": "blue"})");
  CHECK(run("score --config badcfg.json --in small.jsonl --out e1") == 1);
  CHECK(run("score --no-such-flag") == 1);
  CHECK(run("score --in missing.jsonl --out e1") == 2);
  write("broken.jsonl", "{\"id\":\"d\",\"text\":\"x\",\"summary\":\"y\"}\n{nope\n");
  CHECK(run("score --in broken.jsonl --out e1") == 2);
  CHECK(slurp("stderr.txt").find("broken.jsonl:2") != std::string::npos);
  CHECK(run("score --in small.jsonl --out e1 --backend mlm:bert-base-uncased") == 3);
  CHECK(run("score --in small.jsonl --out e2 --variant js --backend mlm:bert-base-uncased") == 0);
}

TEST_CASE("validate writes the three experiment tables") {
  write("synth_v.jsonl", blanc::testing::synthetic_corpus_jsonl(5, 9));
  REQUIRE(run("validate --in synth_v.jsonl --out v1 --seed 3") == 0);
  const auto words = csv("v1/validate_random_words.csv");
  REQUIRE(words.size() == 6);
  CHECK(col(words[0], "original") < col(words[0], "random"));
  const auto sentences = csv("v1/validate_random_sentences.csv");
  CHECK(sentences.size() == 6);
  const auto det = csv("v1/validate_deterioration.csv");
  REQUIRE(det.size() == 1 + 5 * 4);
  const std::size_t k = col(det[0], "k");
  for (std::size_t i = 1; i < det.size(); ++i) CHECK(det[i][k] == std::to_string((i - 1) % 4));
  REQUIRE(run("validate --config v1/manifest.json --out v2 --jobs 4") == 0);
  for (const char* f : {"validate_random_words.csv", "validate_random_sentences.csv", "validate_deterioration.csv"}) {
    CHECK(slurp(fs::path("v1") / f) == slurp(fs::path("v2") / f));
  }
}

TEST_CASE("correlate: 10 annotators give a 120-row split table") {
  std::string corpus;
  for (int i = 0; i < 12; ++i) {
    nlohmann::json j;
    j["id"] = "d" + std::to_string(i);
    j["text"] = "Harbour workers rebuilt the northern wall. Fishermen welcomed the decision number " +
                std::to_string(i) + ".";
    j["summary"] = i % 2 ? "Harbour workers rebuilt the wall." : "Fishermen welcomed something.";
    for (int a = 0; a < 10; ++a) j["human_scores"]["ann" + std::to_string(a)] = (i * 3 + a) % 5;
    corpus += j.dump() + "\n";
  }
  write("ten.jsonl", corpus);
  REQUIRE(run("score --variant help,js --in ten.jsonl --out t1") == 0);
  REQUIRE(run("correlate --in t1/scores.csv --corpus ten.jsonl --out t2") == 0);
  const auto split = csv("t2/annotator_split_help.csv");
  CHECK(split.size() == 121);
  CHECK(split[1][0] == "ann0;ann1;ann2");
  const auto table = csv("t2/summary_table.csv");
  CHECK(table[0] == std::vector<std::string>{"estimator", "method", "humans", "L", "C"});
}

TEST_CASE("correlate: constant metric is flagged, not fatal; p > 0.05 cells are empty") {
  std::string scores = "doc_id,summary_id,variant,value,summary_chars,doc_chars,status\n";
  std::string human = "summary_id,annotator,score\n";
  const double strong[] = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8};
  const double noise[] = {0.5, 0.1, 0.4, 0.2, 0.45, 0.15, 0.3, 0.35};
  for (int i = 0; i < 8; ++i) {
    const std::string id = "s" + std::to_string(i);
    const std::string chars = std::to_string(40 + (i * 7) % 5) + "," + std::to_string(400 + i);
    scores += "d," + id + ",help," + std::to_string(strong[i]) + "," + chars + ",ok\n";
    scores += "d," + id + ",flat,0.25," + chars + ",ok\n";
    scores += "d," + id + ",noise," + std::to_string(noise[i]) + "," + chars + ",ok\n";
    human += id + ",a," + std::to_string(i / 2) + "\n";
    human += id + ",b," + std::to_string((i + 1) / 2) + "\n";
  }
  write("handmade_scores.csv", scores);
  write("handmade_human.csv", human);
  REQUIRE(run("correlate --in handmade_scores.csv --human handmade_human.csv --out h1 --group 1 "
              "--blend help,noise --weights 3,1") == 0);
  const auto corr = csv("h1/correlations.csv");
  const auto& hdr = corr[0];
  bool saw_flat = false;
  std::map<std::string, std::string> significance;
  for (std::size_t i = 1; i < corr.size(); ++i) {
    const auto& r = corr[i];
    if (r[col(hdr, "estimator")] == "flat") {
      saw_flat = true;
      CHECK(r[col(hdr, "status")] == "undefined_correlation");
      CHECK(r[col(hdr, "r")] == "");
    }
    significance[r[0] + "/" + r[1] + "/" + r[2]] = r[col(hdr, "significant")];
  }
  CHECK(saw_flat);
  CHECK(significance["help/humans/pearson"] == "true");
  CHECK(significance["noise/humans/pearson"] == "false");

  const auto table = csv("h1/summary_table.csv");
  const char* targets[] = {"humans", "length", "compression"};
  for (std::size_t i = 1; i < table.size(); ++i) {
    for (int t = 0; t < 3; ++t) {
      const std::string key = table[i][0] + "/" + targets[t] + "/" + table[i][1];
      if (!significance.count(key)) continue;
      CAPTURE(key);
      CHECK(table[i][2 + t].empty() == (significance[key] != "true"));
    }
  }
  const auto blended = csv("h1/blended_scores.csv");
  REQUIRE(blended.size() == 9);
  CHECK(std::stod(blended[1][3]) == doctest::Approx(3 * 0.1 + 0.5));
  CHECK(run("correlate --in handmade_scores.csv --human handmade_human.csv --out h2 --blend help,nothing") == 1);
  CHECK(run("correlate --in handmade_scores.csv --out h3") == 1);
  CHECK(run("correlate --in nothing.csv --human handmade_human.csv --out h3") == 2);
}
