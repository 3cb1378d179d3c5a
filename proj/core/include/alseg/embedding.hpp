#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace alseg {

/// N x Dim feature matrix, one row per selectable item, row-major doubles.
class EmbeddingMatrix {
 public:
  static constexpr double kUnitTolerance = 1e-6;
  static constexpr double kMinNorm = 1e-12;

  /// Validates shape, id uniqueness, finiteness and, when `normalized` is
  /// set, unit row norms.
  EmbeddingMatrix(std::vector<std::string> ids, std::size_t dim,
                  std::vector<double> values, bool normalized = false);

  std::size_t rows() const { return ids_.size(); }
  std::size_t dim() const { return dim_; }
  bool normalized() const { return normalized_; }
  const std::vector<std::string>& ids() const { return ids_; }
  std::span<const double> values() const { return values_; }
  std::span<const double> row(std::size_t i) const {
    return std::span<const double>(values_).subspan(i * dim_, dim_);
  }

  /// Row index of `id`; throws Error(invalid_argument) when absent.
  std::size_t index_of(const std::string& id) const;

 private:
  std::vector<std::string> ids_;
  std::size_t dim_;
  std::vector<double> values_;
  bool normalized_;
};

EmbeddingMatrix normalize_rows(const EmbeddingMatrix& e);

// Embedding file pair: `<payload>.hdr` holds `count=N`, `dim=D`,
// `dtype=f32le`; `<payload>` holds N*D little-endian float32 values; the
// ids file holds one identifier per line in row order.
EmbeddingMatrix read_embeddings(const std::string& payload_path,
                                const std::string& ids_path);
void write_embeddings(const EmbeddingMatrix& e,
                      const std::string& payload_path,
                      const std::string& ids_path);

}  // namespace alseg
