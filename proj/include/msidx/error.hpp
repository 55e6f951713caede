#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace msidx {

enum class ErrorCode {
  forbidden_byte,
  empty_input,
  malformed_fasta,
  invalid_argument,
  out_of_bounds,
  rank_out_of_range,
  not_a_boundary,
  both_none,
  missing_section,
  format,
  version_mismatch,
  io,
};

const char* to_string(ErrorCode code) noexcept;

// Every failure raised by the library carries one of the codes above. The C
// API folds them into its status values at the boundary.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what, std::uint64_t position = 0)
      : std::runtime_error(what), code_(code), position_(position) {}

  ErrorCode code() const noexcept { return code_; }
  // Offending byte offset for forbidden_byte, otherwise 0.
  std::uint64_t position() const noexcept { return position_; }

 private:
  ErrorCode code_;
  std::uint64_t position_;
};

}  // namespace msidx
