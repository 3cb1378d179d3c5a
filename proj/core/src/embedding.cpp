#include "alseg/embedding.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <unordered_set>

#include "alseg/error.hpp"
#include "alseg/text_format.hpp"

namespace alseg {
namespace {

double row_norm(std::span<const double> r) {
  double s = 0.0;
  for (double v : r) s += v * v;
  return std::sqrt(s);
}

}  // namespace

EmbeddingMatrix::EmbeddingMatrix(std::vector<std::string> ids,
                                 std::size_t dim, std::vector<double> values,
                                 bool normalized)
    : ids_(std::move(ids)),
      dim_(dim),
      values_(std::move(values)),
      normalized_(normalized) {
  if (ids_.empty() || dim_ == 0) {
    throw Error(Errc::invalid_argument,
                "embedding matrix needs at least one row and one column");
  }
  if (values_.size() != ids_.size() * dim_) {
    throw Error(Errc::shape_mismatch,
                std::to_string(ids_.size()) + " ids but " +
                    std::to_string(values_.size()) + " values for dim " +
                    std::to_string(dim_));
  }
  std::unordered_set<std::string> seen;
  for (const auto& id : ids_) {
    if (id.empty()) throw Error(Errc::invalid_value, "empty item id");
    if (!seen.insert(id).second) {
      throw Error(Errc::invalid_value, "duplicate item id '" + id + "'");
    }
  }
  for (std::size_t i = 0; i < rows(); ++i) {
    for (double v : row(i)) {
      if (!std::isfinite(v)) {
        throw Error(Errc::invalid_value,
                    "non-finite feature in row '" + ids_[i] + "'");
      }
    }
    if (normalized_ && std::abs(row_norm(row(i)) - 1.0) > kUnitTolerance) {
      throw Error(Errc::invalid_value,
                  "row '" + ids_[i] + "' is flagged normalized but is not");
    }
  }
}

std::size_t EmbeddingMatrix::index_of(const std::string& id) const {
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    if (ids_[i] == id) return i;
  }
  throw Error(Errc::invalid_argument, "unknown item id '" + id + "'");
}

EmbeddingMatrix normalize_rows(const EmbeddingMatrix& e) {
  std::vector<double> out(e.values().begin(), e.values().end());
  for (std::size_t i = 0; i < e.rows(); ++i) {
    const double n = row_norm(e.row(i));
    if (n < EmbeddingMatrix::kMinNorm) {
      throw Error(Errc::invalid_value,
                  "row '" + e.ids()[i] + "' has zero norm");
    }
    for (std::size_t k = 0; k < e.dim(); ++k) out[i * e.dim() + k] /= n;
  }
  return EmbeddingMatrix(e.ids(), e.dim(), std::move(out), true);
}

EmbeddingMatrix read_embeddings(const std::string& payload_path,
                                const std::string& ids_path) {
  const std::string header_path = payload_path + ".hdr";
  for (const auto& p : {header_path, payload_path, ids_path}) {
    if (!std::filesystem::is_regular_file(p)) {
      throw Error(Errc::missing_file, "no such file '" + p + "'");
    }
  }
  auto doc = KeyValueDoc::parse(read_file(header_path), false).doc;
  if (doc.require("dtype") != "f32le") {
    throw Error(Errc::malformed_header,
                header_path + ": unsupported dtype '" + doc.require("dtype") +
                    "'");
  }
  const auto count = parse_u64(doc.require("count"), "count");
  const auto dim = parse_u64(doc.require("dim"), "dim");

  std::vector<std::string> ids;
  for (auto& line : split(read_file(ids_path), '\n')) {
    if (!line.empty()) ids.push_back(std::move(line));
  }
  if (ids.size() != count) {
    throw Error(Errc::shape_mismatch,
                ids_path + ": " + std::to_string(ids.size()) +
                    " ids but header declares " + std::to_string(count) +
                    " rows");
  }

  const std::string payload = read_file(payload_path);
  if (payload.size() != count * dim * 4) {
    throw Error(Errc::payload_length,
                payload_path + ": " + std::to_string(payload.size()) +
                    " bytes, expected " + std::to_string(count * dim * 4));
  }
  std::vector<double> values(count * dim);
  const auto* p = reinterpret_cast<const unsigned char*>(payload.data());
  for (auto& v : values) {
    const std::uint32_t bits =
        static_cast<std::uint32_t>(p[0]) |
        (static_cast<std::uint32_t>(p[1]) << 8) |
        (static_cast<std::uint32_t>(p[2]) << 16) |
        (static_cast<std::uint32_t>(p[3]) << 24);
    v = static_cast<double>(std::bit_cast<float>(bits));
    p += 4;
  }
  return EmbeddingMatrix(std::move(ids), dim, std::move(values));
}

void write_embeddings(const EmbeddingMatrix& e,
                      const std::string& payload_path,
                      const std::string& ids_path) {
  KeyValueDoc doc;
  doc.add("count", std::to_string(e.rows()));
  doc.add("dim", std::to_string(e.dim()));
  doc.add("dtype", "f32le");
  write_file(payload_path + ".hdr", doc.serialize());

  std::string payload(e.values().size() * 4, '\0');
  char* p = payload.data();
  for (double v : e.values()) {
    const auto bits = std::bit_cast<std::uint32_t>(static_cast<float>(v));
    p[0] = static_cast<char>(bits & 0xFFu);
    p[1] = static_cast<char>((bits >> 8) & 0xFFu);
    p[2] = static_cast<char>((bits >> 16) & 0xFFu);
    p[3] = static_cast<char>((bits >> 24) & 0xFFu);
    p += 4;
  }
  write_file(payload_path, payload);

  std::string ids;
  for (const auto& id : e.ids()) ids += id + "\n";
  write_file(ids_path, ids);
}

}  // namespace alseg
