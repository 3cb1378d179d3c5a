#include "alseg/patch_grid.hpp"

#include <algorithm>
#include <set>

#include "alseg/error.hpp"
#include "alseg/text_format.hpp"

namespace alseg {
namespace {

std::size_t ceil_div(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

std::string index_string(const Index3& i) {
  return "z" + std::to_string(i.z) + "_y" + std::to_string(i.y) + "_x" +
         std::to_string(i.x);
}

Index3 parse_index(std::string_view text) {
  auto parts = split(text, ',');
  if (parts.size() != 3) {
    throw Error(Errc::malformed_header,
                "patch index must be Z,Y,X: '" + std::string(text) + "'");
  }
  return {parse_u64(parts[0], "patch z"), parse_u64(parts[1], "patch y"),
          parse_u64(parts[2], "patch x")};
}

}  // namespace

std::string_view to_string(PadMode mode) {
  return mode == PadMode::zero ? "zero" : "reflect";
}

PadMode parse_pad_mode(std::string_view text) {
  if (text == "zero") return PadMode::zero;
  if (text == "reflect") return PadMode::reflect;
  throw Error(Errc::invalid_value, "unknown pad mode '" + std::string(text) +
                                       "' (expected zero|reflect)");
}

PatchSpec plan_grid(Shape3 original_shape, Shape3 patch_shape,
                    PadMode pad_mode) {
  auto check = [](const Shape3& s, const char* what) {
    if (s.z == 0 || s.y == 0 || s.x == 0) {
      throw Error(Errc::invalid_argument,
                  std::string(what) + " has a zero-sized axis: " +
                      to_string(s));
    }
  };
  check(original_shape, "original shape");
  check(patch_shape, "patch shape");

  PatchSpec spec;
  spec.patch_shape = patch_shape;
  spec.pad_mode = pad_mode;
  spec.original_shape = original_shape;
  spec.grid_dims = {ceil_div(original_shape.z, patch_shape.z),
                    ceil_div(original_shape.y, patch_shape.y),
                    ceil_div(original_shape.x, patch_shape.x)};
  spec.padded_shape = {spec.grid_dims.z * patch_shape.z,
                       spec.grid_dims.y * patch_shape.y,
                       spec.grid_dims.x * patch_shape.x};
  return spec;
}

std::vector<PatchId> enumerate_patches(const PatchSpec& spec,
                                       std::string_view volume_name) {
  std::vector<PatchId> ids;
  ids.reserve(spec.patch_count());
  for (std::size_t iz = 0; iz < spec.grid_dims.z; ++iz)
    for (std::size_t iy = 0; iy < spec.grid_dims.y; ++iy)
      for (std::size_t ix = 0; ix < spec.grid_dims.x; ++ix)
        ids.push_back({std::string(volume_name), {iz, iy, ix}});
  return ids;
}

std::size_t reflect_index(std::size_t i, std::size_t n) {
  if (i < n) return i;
  if (n == 1) return 0;
  const std::size_t period = 2 * (n - 1);
  i %= period;
  return i < n ? i : period - i;
}

LabelVolume extract_patch(const LabelVolume& vol, const PatchSpec& spec,
                          const PatchId& id) {
  if (vol.shape() != spec.original_shape) {
    throw Error(Errc::shape_mismatch,
                "volume shape " + to_string(vol.shape()) +
                    " does not match grid original shape " +
                    to_string(spec.original_shape));
  }
  const auto& g = id.grid_index;
  if (g.z >= spec.grid_dims.z || g.y >= spec.grid_dims.y ||
      g.x >= spec.grid_dims.x) {
    throw Error(Errc::out_of_range,
                "patch index " + index_string(g) + " outside grid " +
                    to_string(spec.grid_dims));
  }

  const Shape3& ps = spec.patch_shape;
  const Shape3& os = spec.original_shape;
  const Index3 origin{g.z * ps.z, g.y * ps.y, g.x * ps.x};
  LabelVolume patch(ps, vol.kind());

  for (std::size_t z = 0; z < ps.z; ++z) {
    const std::size_t sz = origin.z + z;
    const bool z_in = sz < os.z;
    for (std::size_t y = 0; y < ps.y; ++y) {
      const std::size_t sy = origin.y + y;
      const bool y_in = sy < os.y;
      for (std::size_t x = 0; x < ps.x; ++x) {
        const std::size_t sx = origin.x + x;
        if (z_in && y_in && sx < os.x) {
          patch.at(z, y, x) = vol.at(sz, sy, sx);
        } else if (spec.pad_mode == PadMode::reflect) {
          patch.at(z, y, x) =
              vol.at(reflect_index(sz, os.z), reflect_index(sy, os.y),
                     reflect_index(sx, os.x));
        }
      }
    }
  }
  return patch;
}

std::vector<Patch> tile(const LabelVolume& vol, const PatchSpec& spec,
                        std::string_view volume_name) {
  std::vector<Patch> out;
  out.reserve(spec.patch_count());
  for (auto& id : enumerate_patches(spec, volume_name)) {
    auto patch = extract_patch(vol, spec, id);
    out.emplace_back(std::move(id), std::move(patch));
  }
  return out;
}

LabelVolume reassemble(const std::vector<Patch>& patches,
                       const PatchSpec& spec) {
  const Shape3& ps = spec.patch_shape;
  const Shape3& os = spec.original_shape;
  std::vector<const LabelVolume*> cells(spec.patch_count(), nullptr);
  auto cell = [&](const Index3& g) {
    return (g.z * spec.grid_dims.y + g.y) * spec.grid_dims.x + g.x;
  };

  ValueKind kind = ValueKind::instance_labels;
  for (const auto& [id, patch] : patches) {
    const auto& g = id.grid_index;
    if (g.z >= spec.grid_dims.z || g.y >= spec.grid_dims.y ||
        g.x >= spec.grid_dims.x) {
      throw Error(Errc::out_of_range,
                  "patch " + index_string(g) + " outside grid " +
                      to_string(spec.grid_dims));
    }
    if (patch.shape() != ps) {
      throw Error(Errc::shape_mismatch,
                  "patch " + index_string(g) + " has shape " +
                      to_string(patch.shape()) + ", expected " +
                      to_string(ps));
    }
    auto& slot = cells[cell(g)];
    if (slot != nullptr) {
      throw Error(Errc::invalid_argument,
                  "duplicate patch " + index_string(g));
    }
    slot = &patch;
    kind = patch.kind();
  }
  for (const auto& id : enumerate_patches(spec, "")) {
    if (cells[cell(id.grid_index)] == nullptr) {
      throw Error(Errc::invalid_argument,
                  "missing patch " + index_string(id.grid_index));
    }
  }

  LabelVolume out(os, kind);
  for (std::size_t z = 0; z < os.z; ++z)
    for (std::size_t y = 0; y < os.y; ++y)
      for (std::size_t x = 0; x < os.x; ++x) {
        const Index3 g{z / ps.z, y / ps.y, x / ps.x};
        out.at(z, y, x) =
            cells[cell(g)]->at(z % ps.z, y % ps.y, x % ps.x);
      }
  return out;
}

std::string patch_filename(const PatchId& id) {
  return id.volume_name + "_" + index_string(id.grid_index) + ".vol3d";
}

std::string encode_grid_manifest(const GridManifest& m) {
  KeyValueDoc doc;
  doc.add("format_version", "1");
  doc.add("volume_name", m.volume_name);
  doc.add("original_shape", to_string(m.spec.original_shape));
  doc.add("patch_shape", to_string(m.spec.patch_shape));
  doc.add("padded_shape", to_string(m.spec.padded_shape));
  doc.add("grid_dims", to_string(m.spec.grid_dims));
  doc.add("pad_mode", std::string(to_string(m.spec.pad_mode)));
  doc.add("patch_count", std::to_string(m.patches.size()));
  for (const auto& id : m.patches) {
    const auto& g = id.grid_index;
    doc.add("patch", std::to_string(g.z) + "," + std::to_string(g.y) + "," +
                         std::to_string(g.x) + " " + patch_filename(id));
  }
  return doc.serialize();
}

GridManifest decode_grid_manifest(std::string_view text) {
  auto doc = KeyValueDoc::parse(text, /*stop_at_blank_line=*/false).doc;
  if (doc.require("format_version") != "1") {
    throw Error(Errc::malformed_header, "unsupported grid manifest version");
  }
  GridManifest m;
  m.volume_name = doc.require("volume_name");
  m.spec = plan_grid(parse_shape(doc.require("original_shape")),
                     parse_shape(doc.require("patch_shape")),
                     parse_pad_mode(doc.require("pad_mode")));
  if (to_string(m.spec.padded_shape) != doc.require("padded_shape") ||
      to_string(m.spec.grid_dims) != doc.require("grid_dims")) {
    throw Error(Errc::malformed_header,
                "grid manifest shapes are inconsistent");
  }
  for (const auto& [k, v] : doc.entries()) {
    if (k != "patch") continue;
    auto sp = v.find(' ');
    auto idx = parse_index(v.substr(0, sp));
    if (idx.z >= m.spec.grid_dims.z || idx.y >= m.spec.grid_dims.y ||
        idx.x >= m.spec.grid_dims.x) {
      throw Error(Errc::malformed_header,
                  "patch index " + index_string(idx) + " outside grid");
    }
    m.patches.push_back({m.volume_name, idx});
  }
  if (m.patches.size() != parse_u64(doc.require("patch_count"), "patch_count")) {
    throw Error(Errc::malformed_header, "patch_count disagrees with entries");
  }
  return m;
}

}  // namespace alseg
