#pragma once

#include <stdexcept>
#include <string>

namespace tcsl {

// Distinct failure classes so callers (and the CLI exit-code contract) can
// tell usage errors from malformed inputs.
enum class Errc {
  bad_magic,
  bad_version,
  bad_header,
  bad_dtype,
  truncated,
  trailing_data,
  inconsistent_offsets,
  location_out_of_range,
  dimension_mismatch,
  invalid_argument,
  io_failure,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}

  Errc code() const { return code_; }

  // true for errors that stem from how the caller invoked the API rather
  // than from broken bytes on disk.
  bool is_usage() const {
    return code_ == Errc::dimension_mismatch || code_ == Errc::invalid_argument;
  }

 private:
  Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& msg) { throw Error(code, msg); }

}  // namespace tcsl
