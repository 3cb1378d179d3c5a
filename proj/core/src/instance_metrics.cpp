#include "alseg/instance_metrics.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <thread>
#include <unordered_map>

#include "alseg/error.hpp"

namespace alseg {
namespace {

struct PartialCounts {
  std::unordered_map<std::uint64_t, std::uint64_t> pairs;
  std::unordered_map<Label, std::uint64_t> pred;
  std::unordered_map<Label, std::uint64_t> gt;
};

std::uint64_t pair_key(Label p, Label g) {
  return (static_cast<std::uint64_t>(p) << 32) | g;
}

void count_range(std::span<const Label> pred, std::span<const Label> gt,
                 std::size_t lo, std::size_t hi, PartialCounts& out) {
  // Instances are spatially coherent, so consecutive voxels usually repeat
  // the previous key; caching it skips most hash lookups.
  std::uint64_t last_key = 0;
  std::uint64_t run = 0;
  auto flush = [&] {
    if (run) out.pairs[last_key] += run;
    run = 0;
  };
  for (std::size_t i = lo; i < hi; ++i) {
    const Label p = pred[i];
    const Label g = gt[i];
    if (p) ++out.pred[p];
    if (g) ++out.gt[g];
    if (p && g) {
      const auto key = pair_key(p, g);
      if (key != last_key) {
        flush();
        last_key = key;
      }
      ++run;
    }
  }
  flush();
}

template <class Map>
std::vector<OverlapHistogram::Total> sorted_totals(const Map& m) {
  std::vector<OverlapHistogram::Total> out;
  out.reserve(m.size());
  for (const auto& [id, c] : m) out.push_back({id, c});
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.id < b.id; });
  return out;
}

std::uint64_t lookup(const std::vector<OverlapHistogram::Total>& v, Label id) {
  auto it = std::lower_bound(
      v.begin(), v.end(), id,
      [](const OverlapHistogram::Total& t, Label x) { return t.id < x; });
  return it != v.end() && it->id == id ? it->count : 0;
}

double ratio(double num, double den) { return den > 0.0 ? num / den : 0.0; }

}  // namespace

std::uint64_t OverlapHistogram::pred_total(Label id) const {
  return lookup(pred_totals, id);
}

std::uint64_t OverlapHistogram::gt_total(Label id) const {
  return lookup(gt_totals, id);
}

double OverlapHistogram::iou(const Pair& p) const {
  const double uni = static_cast<double>(pred_total(p.pred)) +
                     static_cast<double>(gt_total(p.gt)) -
                     static_cast<double>(p.count);
  return ratio(static_cast<double>(p.count), uni);
}

OverlapHistogram overlap_histogram(const LabelVolume& pred,
                                   const LabelVolume& gt,
                                   std::size_t threads) {
  if (pred.shape() != gt.shape()) {
    throw Error(Errc::shape_mismatch,
                "prediction shape " + to_string(pred.shape()) +
                    " differs from ground truth " + to_string(gt.shape()));
  }
  const std::size_t n = pred.size();
  threads = std::max<std::size_t>(1, std::min(threads, n / 4096 + 1));
  std::vector<PartialCounts> parts(threads);
  if (threads == 1) {
    count_range(pred.voxels(), gt.voxels(), 0, n, parts[0]);
  } else {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (n + threads - 1) / threads;
    for (std::size_t t = 0; t < threads; ++t) {
      const std::size_t lo = std::min(n, t * chunk);
      const std::size_t hi = std::min(n, lo + chunk);
      pool.emplace_back([&, t, lo, hi] {
        count_range(pred.voxels(), gt.voxels(), lo, hi, parts[t]);
      });
    }
  }

  std::map<std::uint64_t, std::uint64_t> pairs;
  std::map<Label, std::uint64_t> pred_tot;
  std::map<Label, std::uint64_t> gt_tot;
  for (const auto& part : parts) {
    for (const auto& [k, c] : part.pairs) pairs[k] += c;
    for (const auto& [k, c] : part.pred) pred_tot[k] += c;
    for (const auto& [k, c] : part.gt) gt_tot[k] += c;
  }

  OverlapHistogram h;
  h.pairs.reserve(pairs.size());
  for (const auto& [k, c] : pairs) {
    h.pairs.push_back({static_cast<Label>(k >> 32),
                       static_cast<Label>(k & 0xFFFFFFFFu), c});
  }
  h.pred_totals = sorted_totals(pred_tot);
  h.gt_totals = sorted_totals(gt_tot);
  return h;
}

double MatchResult::sum_iou() const {
  double s = 0.0;
  for (const auto& m : matches) s += m.iou;
  return s;
}

MatchResult match_histogram(const OverlapHistogram& h, double iou_threshold) {
  if (!(iou_threshold >= 0.5 && iou_threshold < 1.0)) {
    throw Error(Errc::invalid_argument,
                "IoU threshold must lie in [0.5, 1), got " +
                    format_double(iou_threshold));
  }
  MatchResult r;
  r.iou_threshold = iou_threshold;
  std::map<Label, Label> pred_to_gt;
  std::map<Label, Label> gt_to_pred;
  for (const auto& p : h.pairs) {
    const double iou = h.iou(p);
    if (!(iou > iou_threshold)) continue;
    if (pred_to_gt.count(p.pred) || gt_to_pred.count(p.gt)) {
      throw Error(Errc::invariant_violation,
                  "instance matched twice at IoU threshold " +
                      format_double(iou_threshold));
    }
    pred_to_gt[p.pred] = p.gt;
    gt_to_pred[p.gt] = p.pred;
    r.matches.push_back({p.pred, p.gt, iou});
  }
  for (const auto& t : h.pred_totals) {
    if (!pred_to_gt.count(t.id)) r.unmatched_pred.push_back(t.id);
  }
  for (const auto& t : h.gt_totals) {
    if (!gt_to_pred.count(t.id)) r.unmatched_gt.push_back(t.id);
  }
  return r;
}

MatchResult match_instances(const LabelVolume& pred, const LabelVolume& gt,
                            double iou_threshold, std::size_t threads) {
  if (!(iou_threshold >= 0.5 && iou_threshold < 1.0)) {
    throw Error(Errc::invalid_argument,
                "IoU threshold must lie in [0.5, 1), got " +
                    format_double(iou_threshold));
  }
  return match_histogram(overlap_histogram(pred, gt, threads), iou_threshold);
}

MetricsRecord score_counts(std::uint64_t tp, std::uint64_t fp,
                           std::uint64_t fn, double sum_iou) {
  const double t = static_cast<double>(tp);
  const double f_p = static_cast<double>(fp);
  const double f_n = static_cast<double>(fn);
  MetricsRecord r;
  r.tp = tp;
  r.fp = fp;
  r.fn = fn;
  r.sum_iou = sum_iou;
  r.precision = ratio(t, t + f_p);
  r.recall = ratio(t, t + f_n);
  r.f1 = ratio(2.0 * t, 2.0 * t + f_p + f_n);
  r.accuracy = ratio(t, t + f_p + f_n);
  r.sq = ratio(sum_iou, t);
  r.rq = r.f1;
  r.pq = r.sq * r.rq;
  return r;
}

MetricsRecord compute_metrics(const MatchResult& m) {
  return score_counts(m.matches.size(), m.unmatched_pred.size(),
                      m.unmatched_gt.size(), m.sum_iou());
}

MetricsRecord pool_metrics(std::span<const MatchResult> results) {
  std::uint64_t tp = 0, fp = 0, fn = 0;
  double sum = 0.0;
  for (const auto& m : results) {
    tp += m.matches.size();
    fp += m.unmatched_pred.size();
    fn += m.unmatched_gt.size();
    sum += m.sum_iou();
  }
  return score_counts(tp, fp, fn, sum);
}

MetricsRecord evaluate(const LabelVolume& pred, const LabelVolume& gt,
                       double iou_threshold, std::size_t threads) {
  return compute_metrics(match_instances(pred, gt, iou_threshold, threads));
}

void append_metrics(KeyValueDoc& doc, const MetricsRecord& r,
                    std::string_view prefix) {
  const std::string p(prefix);
  doc.add(p + "tp", std::to_string(r.tp));
  doc.add(p + "fp", std::to_string(r.fp));
  doc.add(p + "fn", std::to_string(r.fn));
  doc.add(p + "sum_iou", format_double(r.sum_iou));
  doc.add(p + "precision", format_double(r.precision));
  doc.add(p + "recall", format_double(r.recall));
  doc.add(p + "f1", format_double(r.f1));
  doc.add(p + "accuracy", format_double(r.accuracy));
  doc.add(p + "sq", format_double(r.sq));
  doc.add(p + "rq", format_double(r.rq));
  doc.add(p + "pq", format_double(r.pq));
}

MetricsRecord read_metrics(const KeyValueDoc& doc, std::string_view prefix) {
  const std::string p(prefix);
  auto count = [&](const char* k) -> std::uint64_t {
    auto v = doc.find(p + k);
    return v ? parse_u64(*v, p + k) : 0;
  };
  auto score = [&](const char* k, bool required) -> double {
    auto v = doc.find(p + k);
    if (!v) {
      if (required) doc.require(p + k);
      return std::numeric_limits<double>::quiet_NaN();
    }
    return parse_double(*v, p + k);
  };
  MetricsRecord r;
  r.tp = count("tp");
  r.fp = count("fp");
  r.fn = count("fn");
  r.sum_iou = score("sum_iou", false);
  r.precision = score("precision", true);
  r.recall = score("recall", false);
  r.f1 = score("f1", true);
  r.accuracy = score("accuracy", true);
  r.sq = score("sq", false);
  r.rq = score("rq", false);
  r.pq = score("pq", true);
  return r;
}

std::string metrics_csv_header() {
  return "budget,tp,fp,fn,precision,recall,f1,accuracy,sq,rq,pq,iou_threshold";
}

std::string metrics_csv_row(std::optional<std::uint64_t> budget,
                            const MetricsRecord& r, double iou_threshold) {
  std::string row = budget ? std::to_string(*budget) : std::string();
  for (auto c : {r.tp, r.fp, r.fn}) row += "," + std::to_string(c);
  for (double v : {r.precision, r.recall, r.f1, r.accuracy, r.sq, r.rq, r.pq,
                   iou_threshold}) {
    row += "," + format_double(v);
  }
  return row;
}

}  // namespace alseg
