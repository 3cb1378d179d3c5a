#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "alseg/text_format.hpp"
#include "alseg/volume.hpp"

namespace alseg {

/// Voxel co-occurrence of predicted and ground-truth instances. All lists
/// are sorted by id; background (0) never appears.
struct OverlapHistogram {
  struct Pair {
    Label pred;
    Label gt;
    std::uint64_t count;
    bool operator==(const Pair&) const = default;
  };
  struct Total {
    Label id;
    std::uint64_t count;
    bool operator==(const Total&) const = default;
  };

  std::vector<Pair> pairs;
  std::vector<Total> pred_totals;
  std::vector<Total> gt_totals;

  std::uint64_t pred_total(Label id) const;
  std::uint64_t gt_total(Label id) const;
  double iou(const Pair& p) const;

  bool operator==(const OverlapHistogram&) const = default;
};

/// Single pass over both volumes. With `threads` > 1 the scan is split into
/// contiguous ranges whose partial counts are summed; the result is the same
/// for any thread count.
OverlapHistogram overlap_histogram(const LabelVolume& pred,
                                   const LabelVolume& gt,
                                   std::size_t threads = 1);

struct InstanceMatch {
  Label pred_id;
  Label gt_id;
  double iou;
  bool operator==(const InstanceMatch&) const = default;
};

struct MatchResult {
  std::vector<InstanceMatch> matches;  // sorted by pred_id
  std::vector<Label> unmatched_pred;   // false positives
  std::vector<Label> unmatched_gt;     // false negatives
  double iou_threshold = 0.5;

  double sum_iou() const;
};

inline constexpr double kDefaultIouThreshold = 0.5;

/// Pairs (pred, gt) with IoU strictly above `iou_threshold` (>= 0.5, which
/// makes the pairing unique).
MatchResult match_instances(const LabelVolume& pred, const LabelVolume& gt,
                            double iou_threshold = kDefaultIouThreshold,
                            std::size_t threads = 1);
MatchResult match_histogram(const OverlapHistogram& h, double iou_threshold);

/// Instance detection scores. Ratios with a zero denominator are 0.
struct MetricsRecord {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;
  double sum_iou = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double accuracy = 0.0;  // tp / (tp + fp + fn)
  double sq = 0.0;        // mean IoU over matches
  double rq = 0.0;        // equals f1
  double pq = 0.0;        // sq * rq

  bool operator==(const MetricsRecord&) const = default;
};

MetricsRecord score_counts(std::uint64_t tp, std::uint64_t fp,
                           std::uint64_t fn, double sum_iou);
MetricsRecord compute_metrics(const MatchResult& m);
/// Sums counts and IoU over several volumes before scoring.
MetricsRecord pool_metrics(std::span<const MatchResult> results);

MetricsRecord evaluate(const LabelVolume& pred, const LabelVolume& gt,
                       double iou_threshold = kDefaultIouThreshold,
                       std::size_t threads = 1);

/// Adds `<prefix>tp`, `<prefix>fp`, ... entries to `doc`.
void append_metrics(KeyValueDoc& doc, const MetricsRecord& r,
                    std::string_view prefix = "");
/// Reads the entries written by `append_metrics`. Count keys are optional so
/// score-only fixtures parse; scores are taken as stored.
MetricsRecord read_metrics(const KeyValueDoc& doc,
                           std::string_view prefix = "");

/// `budget,tp,fp,fn,precision,recall,f1,accuracy,sq,rq,pq,iou_threshold`
std::string metrics_csv_header();
std::string metrics_csv_row(std::optional<std::uint64_t> budget,
                            const MetricsRecord& r, double iou_threshold);

}  // namespace alseg
