#pragma once

// Filesystem and data fixtures shared by the CLI and acceptance tests.

#include <unistd.h>

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "alseg/embedding.hpp"
#include "alseg/text_format.hpp"
#include "reference_curves.hpp"

namespace alseg::fixture {

class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("alseg_" + tag + "_" + std::to_string(::getpid()) + "_" +
             std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::string operator/(const std::string& name) const {
    return (path_ / name).string();
  }

 private:
  std::filesystem::path path_;
};

inline std::string item_id(std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "item_%04zu", i);
  return buf;
}

// Points scattered around `clusters` random directions; cluster sizes are
// deliberately unequal so uniform sampling over-covers the big ones.
inline EmbeddingMatrix clustered_embeddings(std::mt19937_64& gen,
                                            std::size_t n, std::size_t dim,
                                            std::size_t clusters,
                                            double spread) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<std::vector<double>> centers(clusters,
                                           std::vector<double>(dim));
  for (auto& c : centers)
    for (auto& v : c) v = g(gen);
  std::vector<double> weights;
  for (std::size_t k = 0; k < clusters; ++k) weights.push_back(1 << k);
  std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());

  std::vector<std::string> ids;
  std::vector<double> values;
  for (std::size_t i = 0; i < n; ++i) {
    ids.push_back(item_id(i));
    const auto& c = centers[pick(gen)];
    for (std::size_t d = 0; d < dim; ++d) values.push_back(c[d] + spread * g(gen));
  }
  return EmbeddingMatrix(std::move(ids), dim, std::move(values));
}

// One metrics document per learning-curve budget, in the shape `evaluate` writes.
inline std::vector<std::filesystem::path> write_learning_curve_metrics(
    const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> out;
  for (std::size_t i = 0; i < kBudgets.size(); ++i) {
    KeyValueDoc d;
    d.set("budget", std::to_string(kBudgets[i]));
    d.set("precision", format_double(kPrecision[i]));
    d.set("f1", format_double(kF1[i]));
    d.set("accuracy", format_double(kAccuracy[i]));
    d.set("pq", format_double(kPanoptic[i]));
    out.push_back(dir / ("metrics_b" + std::to_string(kBudgets[i]) + ".txt"));
    write_file(out.back().string(), d.serialize());
  }
  return out;
}

}  // namespace alseg::fixture
