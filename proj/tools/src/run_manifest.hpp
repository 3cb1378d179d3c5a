#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace alseg::cli {

std::string sha256_hex(std::string_view bytes);
std::string sha256_file(const std::filesystem::path& path);

// Provenance record written next to every command's outputs. Contains no
// timestamps, host names, or thread counts, so reruns are byte-identical.
class RunManifest {
 public:
  RunManifest(std::string command, std::string config_text);

  void add_input(const std::filesystem::path& path);
  void add_output(const std::filesystem::path& path);
  std::string serialize() const;

 private:
  std::string command_;
  std::string config_text_;
  std::vector<std::pair<std::string, std::string>> inputs_;
  std::vector<std::string> outputs_;
};

}  // namespace alseg::cli
