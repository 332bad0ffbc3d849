#ifndef BLANC_ANALYSIS_HPP
#define BLANC_ANALYSIS_HPP

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace blanc {

struct Correlation {
  double r = 0.0;
  double p = 1.0;  // two-sided, t-distribution with n - 2 df
  std::size_t n = 0;
  bool significant(double alpha = 0.05) const { return p <= alpha; }
};

/// Throws kInvalidArgument on length mismatch or n < 3 and
/// kUndefinedCorrelation when either vector is constant.
Correlation pearson(std::span<const double> x, std::span<const double> y);
Correlation spearman(std::span<const double> x, std::span<const double> y);

/// Fractional ranks, 1-based, ties get the mean of their positions.
std::vector<double> fractional_ranks(std::span<const double> values);

/// Two-sided p-value of a correlation r over n samples.
double correlation_p_value(double r, std::size_t n);

enum class CorrelationMethod { kPearson, kSpearman };
Correlation correlate(CorrelationMethod method, std::span<const double> x,
                      std::span<const double> y);

/// Summaries x annotators (or metrics), cells optional.
class ScoreMatrix {
 public:
  ScoreMatrix(std::vector<std::string> rows, std::vector<std::string> columns);

  const std::vector<std::string>& rows() const { return rows_; }
  const std::vector<std::string>& columns() const { return columns_; }
  std::size_t row_index(const std::string& id) const;
  std::size_t column_index(const std::string& id) const;

  void set(std::size_t row, std::size_t col, double value);
  void set(const std::string& row, const std::string& col, double value);
  std::optional<double> get(std::size_t row, std::size_t col) const;

 private:
  std::vector<std::string> rows_;
  std::vector<std::string> columns_;
  std::map<std::string, std::size_t> row_lookup_;
  std::map<std::string, std::size_t> column_lookup_;
  std::vector<std::optional<double>> cells_;
};

/// Maps a 0..4 human label to the value averaged.
using ValueMap = std::array<double, 5>;
inline constexpr ValueMap kIdentityValueMap{0.0, 1.0, 2.0, 3.0, 4.0};

struct HumanAggregate {
  std::map<std::string, double> means;
  std::vector<std::string> excluded;  // summaries with no scores
};

/// Per summary, the mean of value_map[score] over available annotators.
HumanAggregate aggregate_human(const ScoreMatrix& matrix,
                               const ValueMap& value_map = kIdentityValueMap);

struct SplitRow {
  std::vector<std::string> group;  // the small group
  std::optional<Correlation> human_human;
  std::optional<Correlation> metric_humans;
  std::size_t n = 0;
  bool human_human_significant() const;
  bool metric_significant() const;
};

/// For every combination of `group_size` annotators (lexicographic over the
/// column order), correlates the small group's mean with the mean of the
/// remaining annotators, and the metric with that same remainder. Summaries
/// lacking a metric value or a score on either side are left out of that
/// combination. Undefined correlations are left empty.
std::vector<SplitRow> annotator_split(
    const ScoreMatrix& matrix, const std::map<std::string, double>& metric_scores,
    std::size_t group_size,
    CorrelationMethod method = CorrelationMethod::kSpearman);

std::size_t binomial(std::size_t n, std::size_t k);

/// All k-subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<std::size_t>> combinations(std::size_t n, std::size_t k);

/// score / C. Throws kDegenerateInput when C <= 0.
double normalize_by_compression(double score, double compression);

/// wa*a + wb*b on the shared ids. Throws kValidation when none are shared.
std::map<std::string, double> blend_scores(const std::map<std::string, double>& a,
                                           const std::map<std::string, double>& b,
                                           std::pair<double, double> weights = {1.0, 1.0});

}  // namespace blanc

#endif  // BLANC_ANALYSIS_HPP
