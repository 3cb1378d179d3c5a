#include "alseg/coreset.hpp"

#include <algorithm>
#include <limits>
#include <thread>
#include <unordered_set>

#include "alseg/error.hpp"
#include "alseg/rng.hpp"
#include "alseg/text_format.hpp"

namespace alseg {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Best {
  double value = -1.0;
  std::size_t index = 0;
};

// Folds the newest pick into every unselected item's min-distance and
// returns the farthest remaining item (lowest index on ties). Chunk
// boundaries depend on `threads`, but the merge keeps the lowest index on
// equal values, so the answer does not.
template <class Dist>
Best update_and_scan(std::vector<double>& min_dist,
                     const std::vector<char>& taken, std::size_t pick,
                     const Dist& dist, std::size_t threads) {
  const std::size_t n = min_dist.size();
  auto work = [&](std::size_t lo, std::size_t hi) {
    Best best;
    for (std::size_t j = lo; j < hi; ++j) {
      if (taken[j]) continue;
      const double dj = dist(pick, j);
      if (dj < min_dist[j]) min_dist[j] = dj;
      if (min_dist[j] > best.value) best = {min_dist[j], j};
    }
    return best;
  };

  if (threads <= 1 || n < 4 * threads) return work(0, n);

  std::vector<Best> partial(threads);
  {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (n + threads - 1) / threads;
    for (std::size_t t = 0; t < threads; ++t) {
      const std::size_t lo = std::min(n, t * chunk);
      const std::size_t hi = std::min(n, lo + chunk);
      pool.emplace_back([&, t, lo, hi] { partial[t] = work(lo, hi); });
    }
  }
  Best best;
  for (const auto& b : partial) {
    if (b.value > best.value) best = b;
  }
  return best;
}

template <class Dist>
void run_greedy(SelectionManifest& m, const std::vector<std::string>& ids,
                const Dist& dist, std::size_t threads) {
  const std::size_t n = ids.size();
  if (m.k_init < 1 || m.k_init > m.budget) {
    throw Error(Errc::invalid_argument,
                "need 1 <= k_init <= budget (k_init=" +
                    std::to_string(m.k_init) +
                    ", budget=" + std::to_string(m.budget) + ")");
  }
  if (m.budget > n) {
    throw Error(Errc::invalid_argument,
                "budget " + std::to_string(m.budget) + " exceeds " +
                    std::to_string(n) + " items");
  }

  std::vector<double> min_dist(n, kInf);
  std::vector<char> taken(n, 0);
  std::vector<std::size_t> order =
      sample_without_replacement(n, m.k_init, m.rng_seed);

  for (std::size_t step = 0; step < m.budget; ++step) {
    const std::size_t pick = order[step];
    taken[pick] = 1;
    const Best best = update_and_scan(min_dist, taken, pick, dist, threads);
    const bool any_left = best.value >= 0.0;
    m.radius_trace.push_back(any_left ? best.value : 0.0);
    // Greedy picks start once the random seeds are exhausted.
    if (order.size() == step + 1 && order.size() < m.budget && any_left) {
      order.push_back(best.index);
    }
  }

  m.selected.reserve(order.size());
  for (std::size_t i : order) m.selected.push_back(ids[i]);
}

void check_pick_count(std::size_t budget, std::size_t n) {
  if (budget > n) {
    throw Error(Errc::invalid_argument,
                "budget " + std::to_string(budget) + " exceeds " +
                    std::to_string(n) + " items");
  }
}

}  // namespace

double cosine_distance(std::span<const double> a, std::span<const double> b) {
  double dot = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) dot += a[k] * b[k];
  return std::clamp(1.0 - dot, 0.0, 2.0);
}

DistanceMatrix cosine_distance_matrix(const EmbeddingMatrix& e) {
  if (!e.normalized()) {
    throw Error(Errc::invalid_argument,
                "cosine_distance_matrix requires normalized rows");
  }
  DistanceMatrix d(e.rows());
  for (std::size_t i = 0; i < e.rows(); ++i) {
    for (std::size_t j = i + 1; j < e.rows(); ++j) {
      const double v = cosine_distance(e.row(i), e.row(j));
      d(i, j) = v;
      d(j, i) = v;
    }
  }
  return d;
}

std::string_view to_string(SelectionMethod m) {
  return m == SelectionMethod::coreset ? "coreset" : "random";
}

SelectionMethod parse_selection_method(std::string_view text) {
  if (text == "coreset") return SelectionMethod::coreset;
  if (text == "random") return SelectionMethod::random;
  throw Error(Errc::invalid_value, "unknown selection method '" +
                                       std::string(text) +
                                       "' (expected coreset|random)");
}

SelectionManifest kcenter_greedy(const EmbeddingMatrix& e, std::size_t budget,
                                 std::size_t k_init, std::uint64_t rng_seed,
                                 const SelectionOptions& options) {
  const EmbeddingMatrix unit = e.normalized() ? e : normalize_rows(e);
  SelectionManifest m;
  m.method = SelectionMethod::coreset;
  m.rng_seed = rng_seed;
  m.k_init = k_init;
  m.budget = budget;
  m.item_count = unit.rows();
  auto dist = [&unit](std::size_t i, std::size_t j) {
    return cosine_distance(unit.row(i), unit.row(j));
  };
  run_greedy(m, unit.ids(), dist, std::max<std::size_t>(1, options.threads));
  return m;
}

SelectionManifest kcenter_greedy(const DistanceMatrix& d,
                                 const std::vector<std::string>& ids,
                                 std::size_t budget, std::size_t k_init,
                                 std::uint64_t rng_seed) {
  if (ids.size() != d.size()) {
    throw Error(Errc::shape_mismatch, "id count does not match matrix size");
  }
  SelectionManifest m;
  m.method = SelectionMethod::coreset;
  m.rng_seed = rng_seed;
  m.k_init = k_init;
  m.budget = budget;
  m.item_count = ids.size();
  auto dist = [&d](std::size_t i, std::size_t j) { return d(i, j); };
  run_greedy(m, ids, dist, 1);
  return m;
}

SelectionManifest random_select(const std::vector<std::string>& ids,
                                std::size_t budget, std::uint64_t rng_seed) {
  check_pick_count(budget, ids.size());
  SelectionManifest m;
  m.method = SelectionMethod::random;
  m.rng_seed = rng_seed;
  m.k_init = 0;
  m.budget = budget;
  m.item_count = ids.size();
  for (std::size_t i : sample_without_replacement(ids.size(), budget, rng_seed)) {
    m.selected.push_back(ids[i]);
  }
  return m;
}

SelectionManifest random_select(const EmbeddingMatrix& e, std::size_t budget,
                                std::uint64_t rng_seed) {
  SelectionManifest m = random_select(e.ids(), budget, rng_seed);
  const EmbeddingMatrix unit = e.normalized() ? e : normalize_rows(e);
  const auto order = sample_without_replacement(e.rows(), budget, rng_seed);
  std::vector<double> min_dist(e.rows(), kInf);
  std::vector<char> taken(e.rows(), 0);
  auto dist = [&unit](std::size_t i, std::size_t j) {
    return cosine_distance(unit.row(i), unit.row(j));
  };
  for (std::size_t pick : order) {
    taken[pick] = 1;
    const Best best = update_and_scan(min_dist, taken, pick, dist, 1);
    m.radius_trace.push_back(best.value >= 0.0 ? best.value : 0.0);
  }
  return m;
}

double coverage_radius(const DistanceMatrix& d,
                       std::span<const std::size_t> selected) {
  if (selected.empty()) {
    throw Error(Errc::invalid_argument, "coverage radius of empty selection");
  }
  std::vector<char> taken(d.size(), 0);
  for (std::size_t s : selected) {
    if (s >= d.size()) {
      throw Error(Errc::out_of_range, "selected index outside matrix");
    }
    taken[s] = 1;
  }
  double radius = 0.0;
  for (std::size_t j = 0; j < d.size(); ++j) {
    if (taken[j]) continue;
    double best = kInf;
    for (std::size_t s : selected) best = std::min(best, d(s, j));
    radius = std::max(radius, best);
  }
  return radius;
}

double coverage_radius(const EmbeddingMatrix& e,
                       std::span<const std::string> selected_ids) {
  if (selected_ids.empty()) {
    throw Error(Errc::invalid_argument, "coverage radius of empty selection");
  }
  const EmbeddingMatrix unit = e.normalized() ? e : normalize_rows(e);
  std::vector<std::size_t> selected;
  std::vector<char> taken(unit.rows(), 0);
  for (const auto& id : selected_ids) {
    selected.push_back(unit.index_of(id));
    taken[selected.back()] = 1;
  }
  double radius = 0.0;
  for (std::size_t j = 0; j < unit.rows(); ++j) {
    if (taken[j]) continue;
    double best = kInf;
    for (std::size_t s : selected) {
      best = std::min(best, cosine_distance(unit.row(s), unit.row(j)));
    }
    radius = std::max(radius, best);
  }
  return radius;
}

std::string encode_manifest(const SelectionManifest& m) {
  KeyValueDoc doc;
  doc.add("format_version", "1");
  doc.add("method", std::string(to_string(m.method)));
  doc.add("rng", "splitmix64");
  doc.add("rng_seed", std::to_string(m.rng_seed));
  doc.add("k_init", std::to_string(m.k_init));
  doc.add("budget", std::to_string(m.budget));
  doc.add("item_count", std::to_string(m.item_count));
  std::string trace;
  for (std::size_t i = 0; i < m.radius_trace.size(); ++i) {
    if (i) trace += ',';
    trace += format_double(m.radius_trace[i]);
  }
  doc.add("radius_trace", trace);
  std::string out = doc.serialize() + "\n";
  for (const auto& id : m.selected) out += id + "\n";
  return out;
}

SelectionManifest decode_manifest(std::string_view text) {
  auto parsed = KeyValueDoc::parse(text, /*stop_at_blank_line=*/true);
  const auto& doc = parsed.doc;
  if (doc.require("format_version") != "1") {
    throw Error(Errc::malformed_header, "unsupported manifest version");
  }
  if (doc.require("rng") != "splitmix64") {
    throw Error(Errc::malformed_header, "unsupported rng '" +
                                            doc.require("rng") + "'");
  }
  SelectionManifest m;
  m.method = parse_selection_method(doc.require("method"));
  m.rng_seed = parse_u64(doc.require("rng_seed"), "rng_seed");
  m.k_init = parse_u64(doc.require("k_init"), "k_init");
  m.budget = parse_u64(doc.require("budget"), "budget");
  m.item_count = parse_u64(doc.require("item_count"), "item_count");
  for (const auto& v : split(doc.require("radius_trace"), ',')) {
    m.radius_trace.push_back(parse_double(v, "radius_trace"));
  }
  for (auto& line : split(text.substr(parsed.body_offset), '\n')) {
    if (!line.empty()) m.selected.push_back(std::move(line));
  }
  if (m.selected.size() != m.budget) {
    throw Error(Errc::malformed_header,
                "manifest lists " + std::to_string(m.selected.size()) +
                    " ids for budget " + std::to_string(m.budget));
  }
  std::unordered_set<std::string> unique(m.selected.begin(), m.selected.end());
  if (unique.size() != m.selected.size()) {
    throw Error(Errc::malformed_header, "manifest repeats an id");
  }
  return m;
}

}  // namespace alseg
