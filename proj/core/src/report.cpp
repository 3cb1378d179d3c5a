#include "alseg/report.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <unordered_set>

#include "alseg/error.hpp"
#include "alseg/text_format.hpp"

namespace alseg {
namespace {

std::string pad_right(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

std::string render_table(const std::vector<std::vector<std::string>>& cells) {
  std::vector<std::size_t> widths;
  for (const auto& row : cells) {
    widths.resize(std::max(widths.size(), row.size()), 0);
    for (std::size_t c = 0; c < row.size(); ++c) {
      widths[c] = std::max(widths[c], row[c].size());
    }
  }
  std::string out;
  for (const auto& row : cells) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      line += c + 1 == row.size() ? row[c] : pad_right(row[c], widths[c] + 2);
    }
    out += line + "\n";
  }
  return out;
}

double full_score(const LearningCurve& curve, Metric m) {
  return metric_value(curve.full_row().record, m);
}

bool has_percent(const LearningCurve& curve, Metric m) {
  const double f = full_score(curve, m);
  return std::isfinite(f) && f != 0.0;
}

std::string cell(double v) {
  return std::isfinite(v) ? display_score(v) : std::string("-");
}

}  // namespace

std::string_view to_string(Metric m) {
  switch (m) {
    case Metric::f1: return "f1";
    case Metric::accuracy: return "accuracy";
    case Metric::pq: return "pq";
    case Metric::precision: return "precision";
    case Metric::recall: return "recall";
  }
  return "?";
}

Metric parse_metric(std::string_view text) {
  if (text == "f1") return Metric::f1;
  if (text == "accuracy") return Metric::accuracy;
  if (text == "pq" || text == "panoptic") return Metric::pq;
  if (text == "precision") return Metric::precision;
  if (text == "recall") return Metric::recall;
  throw Error(Errc::invalid_argument,
              "unknown metric '" + std::string(text) + "'");
}

double metric_value(const MetricsRecord& r, Metric m) {
  switch (m) {
    case Metric::f1: return r.f1;
    case Metric::accuracy: return r.accuracy;
    case Metric::pq: return r.pq;
    case Metric::precision: return r.precision;
    case Metric::recall: return r.recall;
  }
  return 0.0;
}

LearningCurve LearningCurve::build(
    std::vector<std::pair<std::uint64_t, MetricsRecord>> records,
    std::optional<std::uint64_t> full_budget) {
  if (records.empty()) {
    throw Error(Errc::invalid_argument, "learning curve needs records");
  }
  std::sort(records.begin(), records.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t i = 1; i < records.size(); ++i) {
    if (records[i].first == records[i - 1].first) {
      throw Error(Errc::invalid_argument,
                  "duplicate budget " + std::to_string(records[i].first));
    }
  }
  LearningCurve c;
  c.full_budget_ = full_budget.value_or(records.back().first);
  if (c.full_budget_ == 0) {
    throw Error(Errc::invalid_argument, "full budget must be positive");
  }
  for (auto& [b, r] : records) {
    c.rows_.push_back({b,
                       static_cast<double>(b) /
                           static_cast<double>(c.full_budget_),
                       r});
  }
  c.full_row();  // throws when absent
  return c;
}

const CurveRow& LearningCurve::full_row() const {
  for (const auto& r : rows_) {
    if (r.budget == full_budget_) return r;
  }
  throw Error(Errc::invalid_argument,
              "no record for full budget " + std::to_string(full_budget_));
}

std::vector<PercentRow> percent_of_full(const LearningCurve& curve, Metric m) {
  const double full = full_score(curve, m);
  if (!std::isfinite(full) || full == 0.0) {
    throw Error(Errc::invalid_value, "full-budget " +
                                         std::string(to_string(m)) +
                                         " score is zero or missing");
  }
  std::vector<PercentRow> out;
  for (const auto& row : curve.rows()) {
    const double s = metric_value(row.record, m);
    out.push_back({row.budget, s, 100.0 * s / full});
  }
  return out;
}

std::optional<std::uint64_t> first_surpass(const LearningCurve& curve,
                                           Metric m, double fraction) {
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    throw Error(Errc::invalid_argument,
                "fraction must lie in (0, 1], got " + format_double(fraction));
  }
  const double target = fraction * full_score(curve, m);
  for (const auto& row : curve.rows()) {
    if (metric_value(row.record, m) >= target) return row.budget;
  }
  return std::nullopt;
}

std::string display_score(double v) { return format_fixed_half_up(v, 4); }
std::string display_percent(double v) { return format_fixed_half_up(v, 2); }

std::string curve_csv(const LearningCurve& curve) {
  constexpr Metric metrics[] = {Metric::f1, Metric::accuracy, Metric::pq,
                                Metric::precision, Metric::recall};
  std::string out = "budget,fraction";
  for (Metric m : metrics) {
    out += "," + std::string(to_string(m)) + "," + std::string(to_string(m)) +
           "_percent";
  }
  out += "\n";
  for (const auto& row : curve.rows()) {
    out += std::to_string(row.budget) + "," + format_double(row.fraction);
    for (Metric m : metrics) {
      const double s = metric_value(row.record, m);
      out += "," + (std::isfinite(s) ? format_double(s) : std::string());
      out += ",";
      if (has_percent(curve, m) && std::isfinite(s)) {
        out += format_double(100.0 * s / full_score(curve, m));
      }
    }
    out += "\n";
  }
  return out;
}

std::string curve_table(const LearningCurve& curve, double fraction) {
  std::vector<std::vector<std::string>> cells;
  std::vector<std::string> head = {"budget", "percent"};
  for (Metric m : kReportedMetrics) {
    head.emplace_back(to_string(m));
    head.push_back(std::string(to_string(m)) + "(%)");
  }
  cells.push_back(head);

  std::map<Metric, std::optional<std::uint64_t>> marks;
  for (Metric m : kReportedMetrics) {
    if (has_percent(curve, m)) marks[m] = first_surpass(curve, m, fraction);
  }
  for (const auto& row : curve.rows()) {
    std::vector<std::string> line = {std::to_string(row.budget),
                                     display_percent(100.0 * row.fraction)};
    for (Metric m : kReportedMetrics) {
      const double s = metric_value(row.record, m);
      const bool mark = marks.count(m) && marks[m] == row.budget;
      line.push_back(cell(s) + (mark ? "*" : ""));
      if (has_percent(curve, m) && std::isfinite(s)) {
        line.push_back(display_percent(100.0 * s / full_score(curve, m)) +
                       (mark ? "*" : ""));
      } else {
        line.emplace_back("-");
      }
    }
    cells.push_back(std::move(line));
  }
  return render_table(cells);
}

std::string first_surpass_summary(const LearningCurve& curve,
                                  double fraction) {
  std::string out;
  for (Metric m : kReportedMetrics) {
    out += "first_surpass " + std::string(to_string(m)) + " " +
           format_double(fraction) + " ";
    auto b = has_percent(curve, m) ? first_surpass(curve, m, fraction)
                                   : std::nullopt;
    if (b) {
      out += std::to_string(*b) + " " +
             display_percent(100.0 * static_cast<double>(*b) /
                             static_cast<double>(curve.full_budget())) +
             "%";
    } else {
      out += "none";
    }
    out += "\n";
  }
  return out;
}

std::string_view to_string(Strategy s) {
  return s == Strategy::coreset ? "coreset" : "random";
}

Strategy parse_strategy(std::string_view text) {
  if (text == "coreset") return Strategy::coreset;
  if (text == "random") return Strategy::random;
  throw Error(Errc::invalid_value,
              "unknown strategy '" + std::string(text) + "'");
}

namespace {

// Display order: pretrained before not, coreset before random.
std::vector<std::pair<ComparisonKey, const MetricsRecord*>> ordered(
    const std::map<ComparisonKey, MetricsRecord>& records) {
  std::vector<std::pair<ComparisonKey, const MetricsRecord*>> out;
  for (Strategy s : {Strategy::coreset, Strategy::random}) {
    for (bool pre : {true, false}) {
      auto it = records.find({s, pre});
      if (it != records.end()) out.emplace_back(it->first, &it->second);
    }
  }
  return out;
}

}  // namespace

std::string comparison_table(
    const std::map<ComparisonKey, MetricsRecord>& records) {
  std::vector<std::vector<std::string>> cells = {
      {"strategy", "pretrained", "f1", "accuracy", "pq", "precision"}};
  for (const auto& [key, rec] : ordered(records)) {
    cells.push_back({std::string(to_string(key.strategy)),
                     key.pretrained ? "w/" : "w/o", cell(rec->f1),
                     cell(rec->accuracy), cell(rec->pq),
                     cell(rec->precision)});
  }
  return render_table(cells);
}

std::string comparison_csv(
    const std::map<ComparisonKey, MetricsRecord>& records) {
  std::string out = "strategy,pretrained,f1,accuracy,pq,precision\n";
  for (const auto& [key, rec] : ordered(records)) {
    out += std::string(to_string(key.strategy)) + "," +
           (key.pretrained ? "1" : "0");
    for (double v : {rec->f1, rec->accuracy, rec->pq, rec->precision}) {
      out += "," + (std::isfinite(v) ? format_double(v) : std::string());
    }
    out += "\n";
  }
  return out;
}

std::string selection_export_csv(const EmbeddingMatrix& e,
                                 std::span<const std::string> selected_ids) {
  std::unordered_set<std::string> chosen;
  for (const auto& id : selected_ids) {
    e.index_of(id);
    chosen.insert(id);
  }
  std::string out = "id,selected";
  for (std::size_t k = 0; k < e.dim(); ++k) out += ",dim_" + std::to_string(k);
  out += "\n";
  for (std::size_t i = 0; i < e.rows(); ++i) {
    out += e.ids()[i] + (chosen.count(e.ids()[i]) ? ",1" : ",0");
    for (double v : e.row(i)) out += "," + format_double(v);
    out += "\n";
  }
  return out;
}

}  // namespace alseg
