#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace alseg {

/// Ordered `key=value` document. Keys may repeat; lookup returns the first.
///
/// Parsing stops at the first blank line; `body_offset` reports where the
/// bytes after that blank line begin, so the same routine serves both
/// pure-text documents and header+payload files.
class KeyValueDoc {
 public:
  void set(std::string key, std::string value);
  void add(std::string key, std::string value);

  std::optional<std::string> find(std::string_view key) const;
  std::string require(std::string_view key) const;
  bool contains(std::string_view key) const { return find(key).has_value(); }

  const std::vector<std::pair<std::string, std::string>>& entries() const {
    return entries_;
  }

  std::string serialize() const;

  struct Parsed;
  static Parsed parse(std::string_view text, bool stop_at_blank_line);

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

struct KeyValueDoc::Parsed {
  KeyValueDoc doc;
  std::size_t body_offset = 0;  // text.size() when no blank line was seen
  bool saw_blank_line = false;
};

std::string_view trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);

std::uint64_t parse_u64(std::string_view s, std::string_view what);
double parse_double(std::string_view s, std::string_view what);

/// Shortest decimal string that parses back to exactly `v`.
std::string format_double(double v);

/// Fixed-point rendering with round-half-up applied to the shortest decimal
/// representation of `v` (so 0.12345 renders as 0.1235 at 4 places).
std::string format_fixed_half_up(double v, int decimals);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view bytes);

}  // namespace alseg
