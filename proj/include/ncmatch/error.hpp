#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ncm {

enum class ErrorCode {
  bad_input,
  invalid_instance,
  precondition_mismatch,
  shared_endpoint,
  not_convex,
  degenerate,
  rank_out_of_range,
  invalid_dyck,
  cap_exceeded,
  not_231_avoiding,
  truncated_code,
  tape_exhausted,
  not_perfect,
  crossing_detected,
  illegal_match,
  duplicate_x,
  bad_subset,
  domain_error,
  internal,
};

std::string_view error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace ncm
