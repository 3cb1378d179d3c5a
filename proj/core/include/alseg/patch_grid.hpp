#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "alseg/volume.hpp"

namespace alseg {

enum class PadMode { zero, reflect };

std::string_view to_string(PadMode mode);
PadMode parse_pad_mode(std::string_view text);

/// Layout of a volume cut into disjoint, equally sized patches. Padding is
/// applied at the high end of each axis only, so patch (iz, iy, ix) starts
/// at voxel (iz, iy, ix) * patch_shape.
struct PatchSpec {
  Shape3 patch_shape;
  PadMode pad_mode = PadMode::reflect;
  Shape3 original_shape;
  Shape3 padded_shape;
  Shape3 grid_dims;

  std::size_t patch_count() const { return grid_dims.count(); }
  bool operator==(const PatchSpec&) const = default;
};

struct PatchId {
  std::string volume_name;
  Index3 grid_index;

  auto operator<=>(const PatchId&) const = default;
};

using Patch = std::pair<PatchId, LabelVolume>;

PatchSpec plan_grid(Shape3 original_shape, Shape3 patch_shape,
                    PadMode pad_mode = PadMode::reflect);

/// All patch ids of `spec` in z-major grid order.
std::vector<PatchId> enumerate_patches(const PatchSpec& spec,
                                       std::string_view volume_name);

/// Maps an index past the end of an axis of length `n` back inside it by
/// mirroring about the last plane without repeating it: for n = 3,
/// 3 -> 1, 4 -> 0. Repeats periodically when the overhang exceeds n - 1.
std::size_t reflect_index(std::size_t i, std::size_t n);

LabelVolume extract_patch(const LabelVolume& vol, const PatchSpec& spec,
                          const PatchId& id);

std::vector<Patch> tile(const LabelVolume& vol, const PatchSpec& spec,
                        std::string_view volume_name);

/// Inverse of `tile`: every grid cell exactly once, padding discarded.
LabelVolume reassemble(const std::vector<Patch>& patches,
                       const PatchSpec& spec);

/// `<volume_name>_z<iz>_y<iy>_x<ix>.vol3d`
std::string patch_filename(const PatchId& id);

struct GridManifest {
  std::string volume_name;
  PatchSpec spec;
  std::vector<PatchId> patches;
};

std::string encode_grid_manifest(const GridManifest& manifest);
GridManifest decode_grid_manifest(std::string_view text);

}  // namespace alseg
