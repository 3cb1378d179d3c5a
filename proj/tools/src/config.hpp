#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "alseg/coreset.hpp"
#include "alseg/label_fusion.hpp"
#include "alseg/patch_grid.hpp"
#include "alseg/volume.hpp"

namespace alseg::cli {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RefusedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raw string settings with layered precedence: command line, then
// `<command>.<key>` in the config file, then `<key>`.
class Settings {
 public:
  static bool is_known(const std::string& key);

  void load_config(const std::filesystem::path& path,
                   const std::string& command);
  void set(const std::string& key, std::string value);
  std::optional<std::string> find(const std::string& key) const;

 private:
  std::map<std::string, std::string> command_line_;
  std::map<std::string, std::string> scoped_;
  std::map<std::string, std::string> global_;
};

struct PipelineConfig {
  Shape3 patch_shape{32, 512, 512};
  PadMode pad_mode = PadMode::reflect;
  Connectivity connectivity = Connectivity::full26;
  std::size_t min_size = 0;
  double iou_threshold = 0.5;
  SelectionMethod method = SelectionMethod::coreset;
  std::size_t k_init = 3;
  std::vector<std::uint64_t> budgets{0, 8, 16, 32, 64, 128, 256, 512, 1024};
  std::optional<std::uint64_t> budget;
  std::uint64_t rng_seed = 0;
  std::optional<std::uint64_t> full_budget;
  double fraction = 0.9;
  std::size_t threads = 1;
  bool force = false;

  std::filesystem::path input;
  std::filesystem::path output;
  std::string name;
  std::filesystem::path slices;
  std::filesystem::path embeddings;
  std::filesystem::path ids;
  std::vector<std::filesystem::path> pred;
  std::vector<std::filesystem::path> gt;
  std::vector<std::filesystem::path> metrics;

  // Selection budgets for this run: `budget` if set, else `budgets`.
  std::vector<std::uint64_t> selection_budgets() const;
};

PipelineConfig resolve(const Settings& s);

// Canonical key=value rendering of everything that affects outputs.
// Thread count and the force flag are left out.
std::string describe(const PipelineConfig& c);

}  // namespace alseg::cli
