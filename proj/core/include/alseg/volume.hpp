#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace alseg {

/// Extent of a 3D grid in voxels, z-major.
struct Shape3 {
  std::size_t z = 1;
  std::size_t y = 1;
  std::size_t x = 1;

  std::size_t count() const { return z * y * x; }
  auto operator<=>(const Shape3&) const = default;
};

/// Integer position on a 3D grid (voxel coordinate or patch grid index).
struct Index3 {
  std::size_t z = 0;
  std::size_t y = 0;
  std::size_t x = 0;

  auto operator<=>(const Index3&) const = default;
};

std::string to_string(const Shape3& s);  // "Z,Y,X"
Shape3 parse_shape(std::string_view text);

enum class ValueKind { instance_labels, binary_mask };

std::string_view to_string(ValueKind kind);
ValueKind parse_value_kind(std::string_view text);

struct VolumeHeader {
  Shape3 shape;
  ValueKind value_kind = ValueKind::instance_labels;
  static constexpr std::size_t element_width = 4;

  std::size_t payload_bytes() const { return shape.count() * element_width; }
  bool operator==(const VolumeHeader&) const = default;
};

using Label = std::uint32_t;

/// Dense z-major grid of instance identifiers; 0 is background.
class LabelVolume {
 public:
  LabelVolume() = default;
  /// Zero-filled volume.
  LabelVolume(Shape3 shape, ValueKind kind);
  /// Takes ownership of `voxels`; validates size and, for masks, values.
  LabelVolume(Shape3 shape, ValueKind kind, std::vector<Label> voxels);

  const VolumeHeader& header() const { return header_; }
  const Shape3& shape() const { return header_.shape; }
  ValueKind kind() const { return header_.value_kind; }
  void set_kind(ValueKind kind) { header_.value_kind = kind; }

  std::span<const Label> voxels() const { return voxels_; }
  std::span<Label> voxels() { return voxels_; }
  std::size_t size() const { return voxels_.size(); }

  std::size_t index(std::size_t z, std::size_t y, std::size_t x) const {
    return (z * header_.shape.y + y) * header_.shape.x + x;
  }
  Label at(std::size_t z, std::size_t y, std::size_t x) const {
    return voxels_[index(z, y, x)];
  }
  Label& at(std::size_t z, std::size_t y, std::size_t x) {
    return voxels_[index(z, y, x)];
  }

  /// Throws Error(invalid_value) if a binary mask holds values > 1, or
  /// Error(shape_mismatch) if the voxel count disagrees with the shape.
  void validate() const;

  bool operator==(const LabelVolume&) const = default;

 private:
  VolumeHeader header_;
  std::vector<Label> voxels_;
};

/// Number of distinct non-zero labels.
std::size_t count_instances(const LabelVolume& vol);

}  // namespace alseg
