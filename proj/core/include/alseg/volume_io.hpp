#pragma once

#include <string>
#include <string_view>

#include "alseg/volume.hpp"

namespace alseg {

// On-disk layout (".vol3d"):
//
//   shape=Z,Y,X
//   kind=instance_labels|binary_mask
//   width=4
//   order=zyx
//   <blank line>
//   Z*Y*X little-endian uint32 voxels, z-major
//
// Read errors carry distinct codes: missing_file, malformed_header,
// payload_length, invalid_value (mask holding values > 1).

std::string encode_volume(const LabelVolume& vol);
LabelVolume decode_volume(std::string_view bytes);

LabelVolume read_volume(const std::string& path);
void write_volume(const LabelVolume& vol, const std::string& path);

/// Size of the text header block that `encode_volume` emits for `header`.
std::size_t header_bytes(const VolumeHeader& header);

}  // namespace alseg
