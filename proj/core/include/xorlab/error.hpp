#pragma once

#include <stdexcept>
#include <string>

namespace xorlab {

// Structured error codes. The CLI maps these to exit codes and prints the
// code name, so every distinct failure mode keeps a distinct code.
enum class ErrorCode {
  dimension_mismatch,
  dim_out_of_range,
  empty_subspace,
  empty_set,
  empty_intermediate,
  cap_exceeded,
  invalid_hex,
  length_mismatch,
  unknown_family,
  mask_overflow,
  unknown_suite,
  malformed_tree,
  malformed_protocol,
  invalid_spec,
  prime_disagreement,
  invalid_argument,
};

const char* error_code_name(ErrorCode c);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace xorlab
