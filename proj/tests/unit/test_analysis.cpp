#include <functional>
#include <cmath>

#include "blanc/analysis.hpp"
#include "blanc/error.hpp"
#include "blanc/rng.hpp"
#include "doctest.h"

using namespace blanc;
using V = std::vector<double>;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::kInvalidArgument;
}

bool near(double a, double b, double tol = 1e-9) { return std::abs(a - b) <= tol; }

}  // namespace

TEST_CASE("pearson: textbook values") {
  CHECK(near(pearson(V{1, 2, 3}, V{2, 4, 6}).r, 1.0));
  CHECK(near(pearson(V{1, 2, 3}, V{3, 2, 1}).r, -1.0));
  const auto c = pearson(V{1, 2, 3, 4, 5}, V{2, 1, 4, 3, 5});
  CHECK(near(c.r, 0.8));
  CHECK(near(c.p, 0.10408803866182799));
  CHECK(c.n == 5);
  const auto c7 = pearson(V{2.1, 3.4, 1.9, 5.6, 4.4, 3.3, 6.0}, V{1.0, 2.5, 1.1, 4.9, 3.8, 2.0, 5.5});
  CHECK(near(c7.r, 0.9928873352476388));
  CHECK(near(c7.p, 8.163527496770917e-06));
  const auto c10 = pearson(V{10, 20, 30, 40, 50, 60, 70, 80, 90, 100}, V{12, 18, 35, 33, 52, 61, 58, 79, 95, 91});
  CHECK(near(c10.r, 0.9811122231708966));
  CHECK(near(c10.p, 5.442817525251268e-07));
  const auto c6 = pearson(V{3, 1, 4, 1, 5, 9}, V{2, 7, 1, 8, 2, 8});
  CHECK(near(c6.r, -0.006692445047241868));
  CHECK(near(c6.p, 0.9899614823024979));
}

TEST_CASE("spearman: textbook values") {
  const auto t = spearman(V{1, 2, 3, 4}, V{1, 1, 2, 2});
  CHECK(near(t.r, 4.0 / std::sqrt(20.0)));
  CHECK(near(t.p, 0.10557280900008403));
  CHECK(near(spearman(V{1, 2, 3, 4, 5}, V{2, 1, 4, 3, 5}).r, 0.8));
  const auto s7 = spearman(V{2.1, 3.4, 1.9, 5.6, 4.4, 3.3, 6.0}, V{1.0, 2.5, 1.1, 4.9, 3.8, 2.0, 5.5});
  CHECK(near(s7.r, 0.9642857142857145));
  CHECK(near(s7.p, 0.0004541491691941689));
  const auto s8 = spearman(V{1, 2, 2, 3, 4, 5, 5, 6}, V{8, 7, 7, 5, 6, 3, 4, 1});
  CHECK(near(s8.r, -0.969714779131018));
  CHECK(near(s8.p, 6.78758206928213e-05));
  const auto s6 = spearman(V{3, 1, 4, 1, 5, 9}, V{2, 7, 1, 8, 2, 8});
  CHECK(near(s6.r, -0.1343433226559697));
  CHECK(near(s6.p, 0.7996973387806547));
  CHECK(near(spearman(V{1, 2, 3, 4, 5}, V{5, 4, 3, 2, 1}).r, -1.0));
}

TEST_CASE("spearman is invariant under strictly increasing transforms") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(seed);
    V x, y;
    for (int i = 0; i < 12; ++i) {
      x.push_back(static_cast<double>(rng.below(7)));
      y.push_back(rng.uniform());
    }
    if (std::all_of(x.begin(), x.end(), [&](double v) { return v == x[0]; })) continue;
    V fx;
    for (double v : x) fx.push_back(std::exp(v) + 3 * v);
    CHECK(spearman(x, y).r == doctest::Approx(spearman(fx, y).r).epsilon(1e-12));
    V gx;
    for (double v : x) gx.push_back(v * v * v + 1);
    CHECK(near(spearman(gx, x).r, 1.0, 1e-12));
  }
}

TEST_CASE("correlation errors") {
  CHECK(code_of([] { pearson(V{1, 1, 1}, V{1, 2, 3}); }) == ErrorCode::kUndefinedCorrelation);
  CHECK(code_of([] { spearman(V{1, 2, 3}, V{4, 4, 4}); }) == ErrorCode::kUndefinedCorrelation);
  CHECK(code_of([] { pearson(V{1, 2}, V{1, 2}); }) == ErrorCode::kInvalidArgument);
  CHECK(code_of([] { pearson(V{1, 2, 3}, V{1, 2}); }) == ErrorCode::kInvalidArgument);
  CHECK(correlate(CorrelationMethod::kSpearman, V{1, 2, 3}, V{1, 3, 2}).r ==
        spearman(V{1, 2, 3}, V{1, 3, 2}).r);
}

TEST_CASE("fractional ranks and p-values") {
  CHECK(fractional_ranks(V{10, 20, 20, 5}) == V{2, 3.5, 3.5, 1});
  CHECK(correlation_p_value(0.0, 10) == doctest::Approx(1.0));
  CHECK(correlation_p_value(1.0, 10) == 0.0);
  Correlation c;
  c.p = 0.05;
  CHECK(c.significant());
  c.p = 0.0500001;
  CHECK_FALSE(c.significant());
}

TEST_CASE("ScoreMatrix and aggregate_human") {
  ScoreMatrix m({"s1", "s2", "s3"}, {"a", "b"});
  m.set("s1", "a", 4);
  m.set("s1", "b", 4);
  m.set("s2", "a", 2);
  m.set("s2", "b", 3);
  const auto agg = aggregate_human(m);
  CHECK(agg.means.at("s1") == 4.0);
  CHECK(agg.means.at("s2") == 2.5);
  CHECK(agg.excluded == std::vector<std::string>{"s3"});
  const ValueMap remap{0.0, 1.0, 1.0, 3.0, 3.0};
  const auto agg2 = aggregate_human(m, remap);
  CHECK(agg2.means.at("s2") == (remap[2] + remap[3]) / 2);
  CHECK(agg2.means.at("s1") == 3.0);
  CHECK_FALSE(m.get(2, 0).has_value());
  CHECK_THROWS_AS(ScoreMatrix({"x", "x"}, {"a"}), Error);
  ScoreMatrix bad({"s"}, {"a"});
  bad.set(0, 0, 5);
  CHECK_THROWS_AS(aggregate_human(bad), Error);
}

TEST_CASE("combinations") {
  CHECK(binomial(10, 3) == 120);
  CHECK(binomial(4, 2) == 6);
  CHECK(binomial(3, 5) == 0);
  const auto c = combinations(4, 2);
  CHECK(c == std::vector<std::vector<std::size_t>>{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  CHECK(combinations(10, 3).size() == 120);
  CHECK(combinations(3, 0) == std::vector<std::vector<std::size_t>>{{}});
}

TEST_CASE("annotator_split") {
  Rng rng(4);
  std::vector<std::string> rows, cols;
  for (int i = 0; i < 15; ++i) rows.push_back("s" + std::to_string(i));
  for (int a = 0; a < 10; ++a) cols.push_back("a" + std::to_string(a));
  ScoreMatrix m(rows, cols);
  std::map<std::string, double> metric;
  for (int i = 0; i < 15; ++i) {
    for (int a = 0; a < 10; ++a) m.set(i, a, static_cast<double>((i + rng.below(3)) % 5));
    metric[rows[i]] = rng.uniform();
  }
  const auto split = annotator_split(m, metric, 3);
  REQUIRE(split.size() == 120);
  CHECK(split[0].group == std::vector<std::string>{"a0", "a1", "a2"});
  CHECK(split[119].group == std::vector<std::string>{"a7", "a8", "a9"});

  ScoreMatrix four({"s0", "s1", "s2", "s3", "s4"}, {"a", "b", "c", "d"});
  for (int i = 0; i < 5; ++i) {
    for (int a = 0; a < 4; ++a) four.set(i, a, static_cast<double>((i * (a + 1)) % 5));
  }
  const auto six = annotator_split(four, {{"s0", 1}, {"s1", 2}, {"s2", 3}, {"s3", 4}, {"s4", 5}}, 2);
  CHECK(six.size() == 6);

  // A metric equal to the mean of every possible remainder: all annotators agree.
  ScoreMatrix same({"s0", "s1", "s2", "s3", "s4"}, {"a", "b", "c", "d"});
  std::map<std::string, double> exact;
  for (int i = 0; i < 5; ++i) {
    for (int a = 0; a < 4; ++a) same.set(i, a, static_cast<double>(i % 5));
    exact["s" + std::to_string(i)] = static_cast<double>(i % 5);
  }
  for (const auto& row : annotator_split(same, exact, 2, CorrelationMethod::kPearson)) {
    REQUIRE(row.metric_humans);
    CHECK(near(row.metric_humans->r, 1.0, 1e-12));
  }

  // A constant metric cannot be correlated: the cell stays empty.
  std::map<std::string, double> flat;
  for (int i = 0; i < 15; ++i) flat[rows[i]] = 1.0;
  for (const auto& row : annotator_split(m, flat, 3)) {
    CHECK_FALSE(row.metric_humans.has_value());
    CHECK_FALSE(row.metric_significant());
  }
}

TEST_CASE("normalize_by_compression") {
  CHECK(normalize_by_compression(0.05, 0.05) == 1.0);
  CHECK(normalize_by_compression(0.3, 1.0) == 0.3);
  CHECK(normalize_by_compression(0.2, 0.2) == 2 * normalize_by_compression(0.2, 0.4));
  CHECK(code_of([] { normalize_by_compression(0.1, 0.0); }) == ErrorCode::kDegenerateInput);
  CHECK(code_of([] { normalize_by_compression(0.1, -1.0); }) == ErrorCode::kDegenerateInput);
}

TEST_CASE("blend_scores") {
  const std::map<std::string, double> a{{"x", 0.1}, {"y", 0.2}, {"only_a", 1}};
  const std::map<std::string, double> b{{"x", 0.3}, {"y", -0.1}};
  const auto s = blend_scores(a, b, {1, 1});
  CHECK(s.size() == 2);
  CHECK(s.at("x") == doctest::Approx(0.4));
  CHECK(blend_scores(a, b, {3, 1}).at("x") == doctest::Approx(0.6));
  CHECK(blend_scores(a, b, {1, 0}).at("y") == 0.2);
  CHECK(code_of([&] { blend_scores(a, {{"z", 1}}); }) == ErrorCode::kValidation);
}
