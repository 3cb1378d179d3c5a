#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "alseg/embedding.hpp"
#include "alseg/instance_metrics.hpp"

namespace alseg {

enum class Metric { f1, accuracy, pq, precision, recall };

inline constexpr Metric kReportedMetrics[] = {Metric::f1, Metric::accuracy,
                                              Metric::pq, Metric::precision};

std::string_view to_string(Metric m);
/// Accepts the canonical names plus "panoptic" for pq.
Metric parse_metric(std::string_view text);
double metric_value(const MetricsRecord& r, Metric m);

struct CurveRow {
  std::uint64_t budget;
  double fraction;  // budget / full_budget
  MetricsRecord record;
};

/// Scores per annotation budget, one row per budget in increasing order.
class LearningCurve {
 public:
  /// `full_budget` defaults to the largest budget present. Duplicate
  /// budgets or a missing full-budget row are errors.
  static LearningCurve build(
      std::vector<std::pair<std::uint64_t, MetricsRecord>> records,
      std::optional<std::uint64_t> full_budget = std::nullopt);

  const std::vector<CurveRow>& rows() const { return rows_; }
  std::uint64_t full_budget() const { return full_budget_; }
  const CurveRow& full_row() const;

 private:
  std::vector<CurveRow> rows_;
  std::uint64_t full_budget_ = 0;
};

struct PercentRow {
  std::uint64_t budget;
  double score;
  double percent;  // 100 * score / full score, unrounded
};

std::vector<PercentRow> percent_of_full(const LearningCurve& curve, Metric m);

/// Smallest budget whose unrounded score reaches `fraction` of the full
/// score. `fraction` must lie in (0, 1].
std::optional<std::uint64_t> first_surpass(const LearningCurve& curve,
                                           Metric m, double fraction);

/// Display rounding: half-up, 4 places for scores, 2 for percents.
std::string display_score(double v);
std::string display_percent(double v);

/// Machine-readable curve: budget, fraction and per-metric score/percent.
std::string curve_csv(const LearningCurve& curve);
/// Aligned terminal table; `*` marks the first budget reaching `fraction`.
std::string curve_table(const LearningCurve& curve, double fraction = 0.9);
/// One `first_surpass <metric> <fraction> <budget> <percent-of-budget>` line
/// per reported metric.
std::string first_surpass_summary(const LearningCurve& curve,
                                  double fraction = 0.9);

enum class Strategy { coreset, random };

std::string_view to_string(Strategy s);
Strategy parse_strategy(std::string_view text);

struct ComparisonKey {
  Strategy strategy;
  bool pretrained;
  auto operator<=>(const ComparisonKey&) const = default;
};

/// Rows in the order coreset w/, coreset w/o, random w/, random w/o
/// (only those present); columns f1, accuracy, pq, precision. Non-finite
/// cells render as "-".
std::string comparison_table(const std::map<ComparisonKey, MetricsRecord>& records);
std::string comparison_csv(const std::map<ComparisonKey, MetricsRecord>& records);

/// `id,selected,dim_0..dim_{D-1}` for external latent-space plotting.
std::string selection_export_csv(const EmbeddingMatrix& e,
                                 std::span<const std::string> selected_ids);

}  // namespace alseg
