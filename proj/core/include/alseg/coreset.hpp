#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "alseg/embedding.hpp"

namespace alseg {

/// Symmetric N x N cosine distances, entries clamped to [0, 2], zero
/// diagonal.
class DistanceMatrix {
 public:
  explicit DistanceMatrix(std::size_t n) : n_(n), entries_(n * n, 0.0) {}

  std::size_t size() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const {
    return entries_[i * n_ + j];
  }
  double& operator()(std::size_t i, std::size_t j) {
    return entries_[i * n_ + j];
  }
  std::span<const double> entries() const { return entries_; }

 private:
  std::size_t n_;
  std::vector<double> entries_;
};

/// clamp(1 - <a, b>, 0, 2) for unit vectors a and b.
double cosine_distance(std::span<const double> a, std::span<const double> b);

/// Full matrix d = 1 - E E^T. Requires a normalized matrix.
DistanceMatrix cosine_distance_matrix(const EmbeddingMatrix& e);

enum class SelectionMethod { coreset, random };

std::string_view to_string(SelectionMethod m);
SelectionMethod parse_selection_method(std::string_view text);

/// Record of one selection run. `selected` is ordered by pick; the first
/// `k_init` entries of a coreset run are the random seeds.
struct SelectionManifest {
  SelectionMethod method = SelectionMethod::coreset;
  std::uint64_t rng_seed = 0;
  std::size_t k_init = 0;
  std::size_t budget = 0;
  std::size_t item_count = 0;
  std::vector<std::string> selected;
  /// Coverage radius after each pick (same length as `selected`).
  std::vector<double> radius_trace;

  bool operator==(const SelectionManifest&) const = default;
};

struct SelectionOptions {
  /// Worker threads for the per-pick distance update. Output does not
  /// depend on this value.
  std::size_t threads = 1;
};

/// k-center greedy (farthest-point) selection.
///
/// Draws `k_init` seeds uniformly without replacement, then repeatedly adds
/// the unselected item whose minimum cosine distance to the selected set is
/// largest (lowest index on ties) until `budget` items are chosen. Seeds
/// count toward the budget. Distances are computed on the fly from row
/// products; rows are normalized first when `e` is not flagged normalized.
SelectionManifest kcenter_greedy(const EmbeddingMatrix& e, std::size_t budget,
                                 std::size_t k_init, std::uint64_t rng_seed,
                                 const SelectionOptions& options = {});

/// Same selection driven by a precomputed matrix; `ids` are row labels.
SelectionManifest kcenter_greedy(const DistanceMatrix& d,
                                 const std::vector<std::string>& ids,
                                 std::size_t budget, std::size_t k_init,
                                 std::uint64_t rng_seed);

/// Uniform sample without replacement; radius_trace is left empty.
SelectionManifest random_select(const std::vector<std::string>& ids,
                                std::size_t budget, std::uint64_t rng_seed);

/// Uniform sample with the radius trace filled from `e`'s cosine distances.
SelectionManifest random_select(const EmbeddingMatrix& e, std::size_t budget,
                                std::uint64_t rng_seed);

/// Max over unselected items of the min distance to a selected item; 0 when
/// everything is selected.
double coverage_radius(const DistanceMatrix& d,
                       std::span<const std::size_t> selected);
double coverage_radius(const EmbeddingMatrix& e,
                       std::span<const std::string> selected_ids);

// Manifest document: key=value lines (format_version, method, rng,
// rng_seed, k_init, budget, item_count, radius_trace) followed by a blank
// line and one selected id per line in pick order.
std::string encode_manifest(const SelectionManifest& m);
SelectionManifest decode_manifest(std::string_view text);

}  // namespace alseg
