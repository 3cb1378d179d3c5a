#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string_view>
#include <vector>

#include "alseg/volume.hpp"

namespace alseg {

enum class Connectivity { face6, full26 };

std::string_view to_string(Connectivity conn);
/// Accepts "6", "26", "face6", "full26".
Connectivity parse_connectivity(std::string_view text);

/// Maps every non-zero voxel to 1. Output kind is binary_mask.
LabelVolume binarize(const LabelVolume& vol);

/// Stacks single-plane volumes (z = 1) along z and binarizes them; per-slice
/// instance ids are dropped.
LabelVolume stack_slices(std::span<const LabelVolume> slices);

/// Labels the conn-connected foreground components of a binary mask.
///
/// Components are numbered 1..C in the z-major scan order of each
/// component's first voxel, so the result depends only on (mask, conn).
/// Components with fewer than `min_size` voxels are dropped before
/// numbering; 0 disables the filter.
LabelVolume connected_components(const LabelVolume& mask,
                                 Connectivity conn = Connectivity::full26,
                                 std::size_t min_size = 0);

/// `.vol3d` files in `dir` ordered by the numeric suffix of their stem
/// (`slice_0007.vol3d` -> 7). Files without a numeric suffix, or two files
/// with the same number, are errors naming the file.
std::vector<std::filesystem::path> list_slice_files(
    const std::filesystem::path& dir);

/// Reads `list_slice_files(dir)` and stacks them; shape errors name the
/// offending file.
LabelVolume stack_slice_directory(const std::filesystem::path& dir);

}  // namespace alseg
