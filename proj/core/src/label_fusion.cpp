#include "alseg/label_fusion.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <map>

#include "alseg/error.hpp"
#include "alseg/text_format.hpp"
#include "alseg/volume_io.hpp"

namespace alseg {
namespace {

struct Offset {
  int dz, dy, dx;
};

// Neighbors already visited by a z-major raster scan.
std::vector<Offset> backward_offsets(Connectivity conn) {
  if (conn == Connectivity::face6) return {{-1, 0, 0}, {0, -1, 0}, {0, 0, -1}};
  std::vector<Offset> out;
  for (int dz = -1; dz <= 0; ++dz)
    for (int dy = -1; dy <= 1; ++dy)
      for (int dx = -1; dx <= 1; ++dx) {
        if (dz == 0 && (dy > 0 || (dy == 0 && dx >= 0))) continue;
        out.push_back({dz, dy, dx});
      }
  return out;  // 13 offsets
}

class DisjointSet {
 public:
  Label make() {
    parent_.push_back(static_cast<Label>(parent_.size()));
    return parent_.back();
  }

  Label find(Label a) {
    while (parent_[a] != a) {
      parent_[a] = parent_[parent_[a]];
      a = parent_[a];
    }
    return a;
  }

  Label unite(Label a, Label b) {
    a = find(a);
    b = find(b);
    if (a == b) return a;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
    return a;
  }

  std::size_t size() const { return parent_.size(); }

 private:
  std::vector<Label> parent_{0};  // slot 0 is background
};

}  // namespace

std::string_view to_string(Connectivity conn) {
  return conn == Connectivity::face6 ? "face6" : "full26";
}

Connectivity parse_connectivity(std::string_view text) {
  if (text == "6" || text == "face6") return Connectivity::face6;
  if (text == "26" || text == "full26") return Connectivity::full26;
  throw Error(Errc::invalid_value, "unknown connectivity '" +
                                       std::string(text) + "' (expected 6|26)");
}

LabelVolume binarize(const LabelVolume& vol) {
  LabelVolume out(vol.shape(), ValueKind::binary_mask);
  auto src = vol.voxels();
  auto dst = out.voxels();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = src[i] != 0 ? 1 : 0;
  return out;
}

LabelVolume stack_slices(std::span<const LabelVolume> slices) {
  if (slices.empty()) {
    throw Error(Errc::invalid_argument, "no slices to stack");
  }
  const Shape3 first = slices.front().shape();
  for (std::size_t i = 0; i < slices.size(); ++i) {
    const Shape3 s = slices[i].shape();
    if (s.z != 1 || s.y != first.y || s.x != first.x) {
      throw Error(Errc::shape_mismatch,
                  "slice " + std::to_string(i) + " has shape " + to_string(s) +
                      ", expected 1," + std::to_string(first.y) + "," +
                      std::to_string(first.x));
    }
  }
  const std::size_t plane = first.y * first.x;
  LabelVolume out({slices.size(), first.y, first.x}, ValueKind::binary_mask);
  auto dst = out.voxels();
  for (std::size_t z = 0; z < slices.size(); ++z) {
    auto src = slices[z].voxels();
    for (std::size_t i = 0; i < plane; ++i) {
      dst[z * plane + i] = src[i] != 0 ? 1 : 0;
    }
  }
  return out;
}

LabelVolume connected_components(const LabelVolume& mask, Connectivity conn,
                                 std::size_t min_size) {
  if (mask.kind() != ValueKind::binary_mask) {
    throw Error(Errc::invalid_argument,
                "connected_components expects a binary_mask volume");
  }
  mask.validate();
  if (mask.size() >= std::numeric_limits<Label>::max()) {
    throw Error(Errc::invalid_argument, "volume too large for 32-bit labels");
  }

  const Shape3 s = mask.shape();
  const auto offsets = backward_offsets(conn);
  const auto src = mask.voxels();
  std::vector<Label> provisional(mask.size(), 0);
  DisjointSet sets;

  for (std::size_t z = 0; z < s.z; ++z)
    for (std::size_t y = 0; y < s.y; ++y)
      for (std::size_t x = 0; x < s.x; ++x) {
        const std::size_t i = mask.index(z, y, x);
        if (src[i] == 0) continue;
        Label cur = 0;
        for (const auto& o : offsets) {
          const auto nz = static_cast<std::ptrdiff_t>(z) + o.dz;
          const auto ny = static_cast<std::ptrdiff_t>(y) + o.dy;
          const auto nx = static_cast<std::ptrdiff_t>(x) + o.dx;
          if (nz < 0 || ny < 0 || nx < 0 ||
              ny >= static_cast<std::ptrdiff_t>(s.y) ||
              nx >= static_cast<std::ptrdiff_t>(s.x)) {
            continue;
          }
          const Label l = provisional[mask.index(nz, ny, nx)];
          if (l == 0) continue;
          cur = cur == 0 ? sets.find(l) : sets.unite(cur, l);
        }
        provisional[i] = cur != 0 ? cur : sets.make();
      }

  std::vector<std::size_t> sizes;
  if (min_size > 0) {
    sizes.assign(sets.size(), 0);
    for (Label l : provisional) {
      if (l != 0) ++sizes[sets.find(l)];
    }
  }

  std::vector<Label> canonical(sets.size(), 0);
  Label next = 0;
  LabelVolume out(s, ValueKind::instance_labels);
  auto dst = out.voxels();
  for (std::size_t i = 0; i < provisional.size(); ++i) {
    if (provisional[i] == 0) continue;
    const Label root = sets.find(provisional[i]);
    if (min_size > 0 && sizes[root] < min_size) continue;
    if (canonical[root] == 0) canonical[root] = ++next;
    dst[i] = canonical[root];
  }
  return out;
}

std::vector<std::filesystem::path> list_slice_files(
    const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) {
    throw Error(Errc::missing_file,
                "slice directory '" + dir.string() + "' does not exist");
  }
  std::map<std::uint64_t, fs::path> ordered;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".vol3d") {
      continue;
    }
    const std::string stem = entry.path().stem().string();
    auto digits = stem.find_last_not_of("0123456789");
    digits = digits == std::string::npos ? 0 : digits + 1;
    if (digits == stem.size()) {
      throw Error(Errc::invalid_argument,
                  "slice file '" + entry.path().string() +
                      "' has no numeric suffix");
    }
    const auto n = parse_u64(stem.substr(digits), "slice number");
    auto [it, inserted] = ordered.emplace(n, entry.path());
    if (!inserted) {
      throw Error(Errc::invalid_argument,
                  "slice files '" + it->second.string() + "' and '" +
                      entry.path().string() + "' share number " +
                      std::to_string(n));
    }
  }
  if (ordered.empty()) {
    throw Error(Errc::invalid_argument,
                "slice directory '" + dir.string() + "' has no .vol3d files");
  }
  std::vector<fs::path> out;
  out.reserve(ordered.size());
  for (auto& [n, p] : ordered) out.push_back(std::move(p));
  return out;
}

LabelVolume stack_slice_directory(const std::filesystem::path& dir) {
  const auto files = list_slice_files(dir);
  std::vector<LabelVolume> slices;
  slices.reserve(files.size());
  for (const auto& f : files) {
    slices.push_back(read_volume(f.string()));
    const Shape3 s = slices.back().shape();
    const Shape3 first = slices.front().shape();
    if (s.z != 1 || s.y != first.y || s.x != first.x) {
      throw Error(Errc::shape_mismatch,
                  f.string() + ": slice shape " + to_string(s) +
                      " differs from first slice " + to_string(first) +
                      " (slices must be 1,Y,X)");
    }
  }
  return stack_slices(slices);
}

}  // namespace alseg
