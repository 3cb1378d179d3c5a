#include "run_manifest.hpp"

#include <openssl/evp.h>

#include "alseg/error.hpp"
#include "alseg/text_format.hpp"

#ifndef ALSEG_VERSION
#define ALSEG_VERSION "0.0.0"
#endif

namespace alseg::cli {

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(),
                 nullptr) != 1) {
    throw Error(Errc::invariant_violation, "sha256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 15];
  }
  return out;
}

std::string sha256_file(const std::filesystem::path& path) {
  return sha256_hex(read_file(path.string()));
}

RunManifest::RunManifest(std::string command, std::string config_text)
    : command_(std::move(command)), config_text_(std::move(config_text)) {}

void RunManifest::add_input(const std::filesystem::path& path) {
  inputs_.emplace_back(path.string(), sha256_file(path));
}

void RunManifest::add_output(const std::filesystem::path& path) {
  outputs_.push_back(path.string());
}

std::string RunManifest::serialize() const {
  KeyValueDoc d;
  d.set("format_version", "1");
  d.set("tool", "alseg");
  d.set("tool_version", ALSEG_VERSION);
  d.set("command", command_);
  d.set("config_sha256", sha256_hex(config_text_));
  auto config = KeyValueDoc::parse(config_text_, false).doc;
  for (const auto& [k, v] : config.entries()) d.add("config." + k, v);
  for (const auto& [path, digest] : inputs_) {
    d.add("input", digest + " " + path);
  }
  for (const auto& path : outputs_) d.add("output", path);
  return d.serialize();
}

}  // namespace alseg::cli
