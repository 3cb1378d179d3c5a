#include "alseg/text_format.hpp"

#include <charconv>
#include <fstream>
#include <iterator>
#include <sstream>

#include "alseg/error.hpp"

namespace alseg {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::missing_file: return "missing file";
    case Errc::malformed_header: return "malformed header";
    case Errc::payload_length: return "payload length mismatch";
    case Errc::invalid_value: return "invalid value";
    case Errc::shape_mismatch: return "shape mismatch";
    case Errc::out_of_range: return "out of range";
    case Errc::invalid_argument: return "invalid argument";
    case Errc::io_failure: return "i/o failure";
    case Errc::invariant_violation: return "invariant violation";
  }
  return "unknown";
}

void KeyValueDoc::set(std::string key, std::string value) {
  for (auto& [k, v] : entries_) {
    if (k == key) {
      v = std::move(value);
      return;
    }
  }
  add(std::move(key), std::move(value));
}

void KeyValueDoc::add(std::string key, std::string value) {
  entries_.emplace_back(std::move(key), std::move(value));
}

std::optional<std::string> KeyValueDoc::find(std::string_view key) const {
  for (const auto& [k, v] : entries_) {
    if (k == key) return v;
  }
  return std::nullopt;
}

std::string KeyValueDoc::require(std::string_view key) const {
  auto v = find(key);
  if (!v) {
    throw Error(Errc::malformed_header,
                "missing required key '" + std::string(key) + "'");
  }
  return *v;
}

std::string KeyValueDoc::serialize() const {
  std::string out;
  for (const auto& [k, v] : entries_) {
    out += k;
    out += '=';
    out += v;
    out += '\n';
  }
  return out;
}

KeyValueDoc::Parsed KeyValueDoc::parse(std::string_view text,
                                       bool stop_at_blank_line) {
  Parsed result;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol < text.size() ? eol + 1 : eol;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    if (line.empty() || trim(line).empty()) {
      if (stop_at_blank_line) {
        result.saw_blank_line = true;
        result.body_offset = pos;
        return result;
      }
      continue;
    }
    std::string_view t = trim(line);
    if (t.front() == '#') continue;
    auto eq = t.find('=');
    if (eq == std::string_view::npos) {
      throw Error(Errc::malformed_header,
                  "line " + std::to_string(line_no) + ": expected key=value");
    }
    auto key = trim(t.substr(0, eq));
    if (key.empty()) {
      throw Error(Errc::malformed_header,
                  "line " + std::to_string(line_no) + ": empty key");
    }
    result.doc.add(std::string(key), std::string(trim(t.substr(eq + 1))));
  }
  result.body_offset = text.size();
  return result;
}

std::string_view trim(std::string_view s) {
  const char* ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  if (trim(s).empty()) return out;
  std::size_t pos = 0;
  while (true) {
    auto next = s.find(sep, pos);
    out.emplace_back(trim(s.substr(pos, next - pos)));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

std::uint64_t parse_u64(std::string_view s, std::string_view what) {
  s = trim(s);
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(Errc::invalid_value, std::string(what) +
                                         ": not a non-negative integer: '" +
                                         std::string(s) + "'");
  }
  return v;
}

double parse_double(std::string_view s, std::string_view what) {
  s = trim(s);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(Errc::invalid_value, std::string(what) + ": not a number: '" +
                                         std::string(s) + "'");
  }
  return v;
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw Error(Errc::invariant_violation, "to_chars");
  return std::string(buf, ptr);
}

std::string format_fixed_half_up(double v, int decimals) {
  char buf[400];
  auto [ptr, ec] =
      std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed);
  if (ec != std::errc()) throw Error(Errc::invariant_violation, "to_chars");
  std::string s(buf, ptr);

  bool negative = !s.empty() && s.front() == '-';
  if (negative) s.erase(0, 1);
  auto dot = s.find('.');
  std::string int_part = dot == std::string::npos ? s : s.substr(0, dot);
  std::string frac = dot == std::string::npos ? "" : s.substr(dot + 1);

  bool round_up = frac.size() > static_cast<std::size_t>(decimals) &&
                  frac[decimals] >= '5';
  frac.resize(decimals, '0');
  std::string digits = int_part + frac;
  if (round_up) {
    int i = static_cast<int>(digits.size()) - 1;
    for (; i >= 0; --i) {
      if (digits[i] == '9') {
        digits[i] = '0';
      } else {
        ++digits[i];
        break;
      }
    }
    if (i < 0) digits.insert(digits.begin(), '1');
  }
  std::string out = digits.substr(0, digits.size() - decimals);
  if (decimals > 0) {
    out += '.';
    out += digits.substr(digits.size() - decimals);
  }
  bool all_zero = out.find_first_not_of("0.") == std::string::npos;
  if (negative && !all_zero) out.insert(out.begin(), '-');
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::missing_file, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw Error(Errc::io_failure, "read failed: '" + path + "'");
  return std::move(ss).str();
}

void write_file(const std::string& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::io_failure, "cannot write '" + path + "'");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  out.flush();
  if (!out) throw Error(Errc::io_failure, "write failed: '" + path + "'");
}

}  // namespace alseg
