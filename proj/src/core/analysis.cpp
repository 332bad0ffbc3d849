#include "blanc/analysis.hpp"

#include <algorithm>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <numeric>

#include "blanc/error.hpp"

namespace blanc {

namespace {

void check_pair(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw Error(ErrorCode::kInvalidArgument, "correlation inputs differ in length");
  }
  if (x.size() < 3) {
    throw Error(ErrorCode::kInvalidArgument, "correlation needs at least 3 samples");
  }
}

bool is_constant(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [&](double a) { return a == v.front(); });
}

}  // namespace

double correlation_p_value(double r, std::size_t n) {
  if (n < 3) return 1.0;
  if (std::abs(r) >= 1.0) return 0.0;
  const double df = static_cast<double>(n - 2);
  const double t = std::abs(r) * std::sqrt(df / (1.0 - r * r));
  const boost::math::students_t dist(df);
  return 2.0 * boost::math::cdf(boost::math::complement(dist, t));
}

Correlation pearson(std::span<const double> x, std::span<const double> y) {
  check_pair(x, y);
  if (is_constant(x) || is_constant(y)) {
    throw Error(ErrorCode::kUndefinedCorrelation, "correlation with a constant vector");
  }
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0;
  double syy = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  Correlation c;
  c.n = x.size();
  c.r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  c.p = correlation_p_value(c.r, c.n);
  return c;
}

std::vector<double> fractional_ranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i + 1;
    while (j < order.size() && values[order[j]] == values[order[i]]) ++j;
    const double mid = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = mid;
    i = j;
  }
  return ranks;
}

Correlation spearman(std::span<const double> x, std::span<const double> y) {
  check_pair(x, y);
  const auto rx = fractional_ranks(x);
  const auto ry = fractional_ranks(y);
  return pearson(rx, ry);
}

Correlation correlate(CorrelationMethod method, std::span<const double> x,
                      std::span<const double> y) {
  return method == CorrelationMethod::kPearson ? pearson(x, y) : spearman(x, y);
}

// ---- ScoreMatrix -------------------------------------------------------------

ScoreMatrix::ScoreMatrix(std::vector<std::string> rows, std::vector<std::string> columns)
    : rows_(std::move(rows)), columns_(std::move(columns)) {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (!row_lookup_.emplace(rows_[i], i).second) {
      throw Error(ErrorCode::kValidation, "duplicate row id '" + rows_[i] + "'");
    }
  }
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (!column_lookup_.emplace(columns_[i], i).second) {
      throw Error(ErrorCode::kValidation, "duplicate column id '" + columns_[i] + "'");
    }
  }
  cells_.resize(rows_.size() * columns_.size());
}

std::size_t ScoreMatrix::row_index(const std::string& id) const {
  auto it = row_lookup_.find(id);
  if (it == row_lookup_.end()) throw Error(ErrorCode::kValidation, "unknown row '" + id + "'");
  return it->second;
}

std::size_t ScoreMatrix::column_index(const std::string& id) const {
  auto it = column_lookup_.find(id);
  if (it == column_lookup_.end()) throw Error(ErrorCode::kValidation, "unknown column '" + id + "'");
  return it->second;
}

void ScoreMatrix::set(std::size_t row, std::size_t col, double value) {
  cells_.at(row * columns_.size() + col) = value;
}

void ScoreMatrix::set(const std::string& row, const std::string& col, double value) {
  set(row_index(row), column_index(col), value);
}

std::optional<double> ScoreMatrix::get(std::size_t row, std::size_t col) const {
  return cells_.at(row * columns_.size() + col);
}

// ---- Human scores --------------------------------------------------------------

HumanAggregate aggregate_human(const ScoreMatrix& matrix, const ValueMap& value_map) {
  HumanAggregate out;
  for (std::size_t r = 0; r < matrix.rows().size(); ++r) {
    double sum = 0.0;
    std::size_t n = 0;
    for (std::size_t c = 0; c < matrix.columns().size(); ++c) {
      const auto v = matrix.get(r, c);
      if (!v) continue;
      const double label = *v;
      if (label < 0.0 || label > 4.0 || label != std::floor(label)) {
        throw Error(ErrorCode::kInvalidArgument,
                    "human score outside {0..4} for '" + matrix.rows()[r] + "'");
      }
      sum += value_map[static_cast<std::size_t>(label)];
      ++n;
    }
    if (n == 0) {
      out.excluded.push_back(matrix.rows()[r]);
    } else {
      out.means[matrix.rows()[r]] = sum / static_cast<double>(n);
    }
  }
  return out;
}

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::size_t result = 1;
  for (std::size_t i = 1; i <= k; ++i) result = result * (n - k + i) / i;
  return result;
}

std::vector<std::vector<std::size_t>> combinations(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  if (k > n) return out;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  for (;;) {
    out.push_back(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

bool SplitRow::human_human_significant() const {
  return human_human && human_human->significant();
}

bool SplitRow::metric_significant() const {
  return metric_humans && metric_humans->significant();
}

namespace {

std::optional<Correlation> try_correlate(CorrelationMethod method, const std::vector<double>& x,
                                         const std::vector<double>& y) {
  try {
    return correlate(method, x, y);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kUndefinedCorrelation || e.code() == ErrorCode::kInvalidArgument) {
      return std::nullopt;
    }
    throw;
  }
}

std::optional<double> group_mean(const ScoreMatrix& m, std::size_t row,
                                 const std::vector<bool>& in_group, bool want) {
  double sum = 0.0;
  std::size_t n = 0;
  for (std::size_t c = 0; c < m.columns().size(); ++c) {
    if (in_group[c] != want) continue;
    if (auto v = m.get(row, c)) {
      sum += *v;
      ++n;
    }
  }
  if (n == 0) return std::nullopt;
  return sum / static_cast<double>(n);
}

}  // namespace

std::vector<SplitRow> annotator_split(const ScoreMatrix& matrix,
                                      const std::map<std::string, double>& metric_scores,
                                      std::size_t group_size, CorrelationMethod method) {
  const std::size_t n = matrix.columns().size();
  if (group_size == 0 || group_size >= n) {
    throw Error(ErrorCode::kInvalidArgument, "group size must lie in [1, annotators)");
  }
  std::vector<SplitRow> rows;
  for (const auto& combo : combinations(n, group_size)) {
    std::vector<bool> in_group(n, false);
    SplitRow row;
    for (std::size_t c : combo) {
      in_group[c] = true;
      row.group.push_back(matrix.columns()[c]);
    }
    std::vector<double> small;
    std::vector<double> rest;
    std::vector<double> metric;
    for (std::size_t r = 0; r < matrix.rows().size(); ++r) {
      auto m = metric_scores.find(matrix.rows()[r]);
      if (m == metric_scores.end()) continue;
      const auto s = group_mean(matrix, r, in_group, true);
      const auto o = group_mean(matrix, r, in_group, false);
      if (!s || !o) continue;
      small.push_back(*s);
      rest.push_back(*o);
      metric.push_back(m->second);
    }
    row.n = small.size();
    row.human_human = try_correlate(method, small, rest);
    row.metric_humans = try_correlate(method, metric, rest);
    rows.push_back(std::move(row));
  }
  return rows;
}

double normalize_by_compression(double score, double compression) {
  if (!(compression > 0.0)) {
    throw Error(ErrorCode::kDegenerateInput, "compression must be positive");
  }
  return score / compression;
}

std::map<std::string, double> blend_scores(const std::map<std::string, double>& a,
                                           const std::map<std::string, double>& b,
                                           std::pair<double, double> weights) {
  std::map<std::string, double> out;
  for (const auto& [id, va] : a) {
    if (auto it = b.find(id); it != b.end()) {
      out[id] = weights.first * va + weights.second * it->second;
    }
  }
  if (out.empty()) throw Error(ErrorCode::kValidation, "score maps share no ids");
  return out;
}

}  // namespace blanc
