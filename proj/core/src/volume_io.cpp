#include "alseg/volume_io.hpp"

#include <algorithm>
#include <filesystem>

#include "alseg/error.hpp"
#include "alseg/text_format.hpp"

namespace alseg {
namespace {

std::string header_text(const VolumeHeader& h) {
  KeyValueDoc doc;
  doc.add("shape", to_string(h.shape));
  doc.add("kind", std::string(to_string(h.value_kind)));
  doc.add("width", std::to_string(VolumeHeader::element_width));
  doc.add("order", "zyx");
  return doc.serialize() + "\n";
}

VolumeHeader parse_header(const KeyValueDoc& doc) {
  static constexpr std::string_view known[] = {"shape", "kind", "width",
                                               "order"};
  for (const auto& [k, v] : doc.entries()) {
    if (std::find(std::begin(known), std::end(known), k) == std::end(known)) {
      throw Error(Errc::malformed_header, "unknown header key '" + k + "'");
    }
  }
  VolumeHeader h;
  try {
    h.shape = parse_shape(doc.require("shape"));
    h.value_kind = parse_value_kind(doc.require("kind"));
  } catch (const Error& e) {
    throw Error(Errc::malformed_header, e.what());
  }
  if (doc.require("width") != "4") {
    throw Error(Errc::malformed_header,
                "unsupported width '" + doc.require("width") + "'");
  }
  if (doc.require("order") != "zyx") {
    throw Error(Errc::malformed_header,
                "unsupported order '" + doc.require("order") + "'");
  }
  return h;
}

}  // namespace

std::size_t header_bytes(const VolumeHeader& header) {
  return header_text(header).size();
}

std::string encode_volume(const LabelVolume& vol) {
  vol.validate();
  std::string out = header_text(vol.header());
  const std::size_t head = out.size();
  out.resize(head + vol.header().payload_bytes());
  char* p = out.data() + head;
  for (Label v : vol.voxels()) {
    p[0] = static_cast<char>(v & 0xFFu);
    p[1] = static_cast<char>((v >> 8) & 0xFFu);
    p[2] = static_cast<char>((v >> 16) & 0xFFu);
    p[3] = static_cast<char>((v >> 24) & 0xFFu);
    p += 4;
  }
  return out;
}

LabelVolume decode_volume(std::string_view bytes) {
  auto parsed = KeyValueDoc::parse(bytes, /*stop_at_blank_line=*/true);
  if (!parsed.saw_blank_line) {
    throw Error(Errc::malformed_header, "header not terminated by blank line");
  }
  VolumeHeader h = parse_header(parsed.doc);
  const std::size_t payload = bytes.size() - parsed.body_offset;
  if (payload != h.payload_bytes()) {
    throw Error(Errc::payload_length,
                "payload is " + std::to_string(payload) + " bytes, header " +
                    to_string(h.shape) + " requires " +
                    std::to_string(h.payload_bytes()));
  }
  std::vector<Label> voxels(h.shape.count());
  const auto* p =
      reinterpret_cast<const unsigned char*>(bytes.data() + parsed.body_offset);
  for (auto& v : voxels) {
    v = static_cast<Label>(p[0]) | (static_cast<Label>(p[1]) << 8) |
        (static_cast<Label>(p[2]) << 16) | (static_cast<Label>(p[3]) << 24);
    p += 4;
  }
  return LabelVolume(h.shape, h.value_kind, std::move(voxels));
}

LabelVolume read_volume(const std::string& path) {
  if (!std::filesystem::is_regular_file(path)) {
    throw Error(Errc::missing_file, "no such volume file '" + path + "'");
  }
  try {
    return decode_volume(read_file(path));
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

void write_volume(const LabelVolume& vol, const std::string& path) {
  write_file(path, encode_volume(vol));
}

}  // namespace alseg
