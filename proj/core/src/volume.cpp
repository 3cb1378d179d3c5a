#include "alseg/volume.hpp"

#include <algorithm>
#include <limits>
#include <unordered_set>

#include "alseg/error.hpp"
#include "alseg/text_format.hpp"

namespace alseg {

std::string to_string(const Shape3& s) {
  return std::to_string(s.z) + "," + std::to_string(s.y) + "," +
         std::to_string(s.x);
}

Shape3 parse_shape(std::string_view text) {
  auto parts = split(text, ',');
  if (parts.size() != 3) {
    throw Error(Errc::invalid_value,
                "shape must be Z,Y,X: '" + std::string(text) + "'");
  }
  Shape3 s{parse_u64(parts[0], "shape z"), parse_u64(parts[1], "shape y"),
           parse_u64(parts[2], "shape x")};
  if (s.z == 0 || s.y == 0 || s.x == 0) {
    throw Error(Errc::invalid_value,
                "shape components must be >= 1: '" + std::string(text) + "'");
  }
  constexpr std::size_t limit = std::numeric_limits<std::size_t>::max() / 8;
  if (s.y > limit / s.x || s.z > limit / (s.y * s.x)) {
    throw Error(Errc::invalid_value,
                "shape too large: '" + std::string(text) + "'");
  }
  return s;
}

std::string_view to_string(ValueKind kind) {
  return kind == ValueKind::binary_mask ? "binary_mask" : "instance_labels";
}

ValueKind parse_value_kind(std::string_view text) {
  if (text == "instance_labels") return ValueKind::instance_labels;
  if (text == "binary_mask") return ValueKind::binary_mask;
  throw Error(Errc::invalid_value,
              "unknown volume kind '" + std::string(text) + "'");
}

LabelVolume::LabelVolume(Shape3 shape, ValueKind kind)
    : header_{shape, kind}, voxels_(shape.count(), 0) {}

LabelVolume::LabelVolume(Shape3 shape, ValueKind kind,
                         std::vector<Label> voxels)
    : header_{shape, kind}, voxels_(std::move(voxels)) {
  validate();
}

void LabelVolume::validate() const {
  const auto& s = header_.shape;
  if (s.z == 0 || s.y == 0 || s.x == 0) {
    throw Error(Errc::invalid_value, "volume shape has a zero axis");
  }
  if (voxels_.size() != s.count()) {
    throw Error(Errc::shape_mismatch,
                "voxel count " + std::to_string(voxels_.size()) +
                    " does not match shape " + to_string(s));
  }
  if (header_.value_kind == ValueKind::binary_mask) {
    auto bad = std::find_if(voxels_.begin(), voxels_.end(),
                            [](Label v) { return v > 1; });
    if (bad != voxels_.end()) {
      throw Error(Errc::invalid_value,
                  "binary_mask volume holds value " + std::to_string(*bad) +
                      " at voxel " +
                      std::to_string(bad - voxels_.begin()));
    }
  }
}

std::size_t count_instances(const LabelVolume& vol) {
  std::unordered_set<Label> ids;
  for (Label v : vol.voxels()) {
    if (v != 0) ids.insert(v);
  }
  return ids.size();
}

}  // namespace alseg
