#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace alseg {

// Failure classes. The CLI maps these onto exit statuses, so each class
// must stay distinguishable by code alone.
enum class Errc {
  missing_file,
  malformed_header,
  payload_length,
  invalid_value,
  shape_mismatch,
  out_of_range,
  invalid_argument,
  io_failure,
  invariant_violation,
};

std::string_view to_string(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace alseg
