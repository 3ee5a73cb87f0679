#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hypercalc {

/// Error categories raised by the library. The CLI maps every code except
/// `usage` to exit status 1.
enum class ErrorCode {
  usage,
  syntax,
  wrong_variable,
  division_by_zero,
  domain,
  kink,
  infinite_argument,
  pole_at_index,
  identically_singular,
  singular_at_point,
  unsupported_form,
  ultrafilter_dependent,
  no_closed_form,
  unknown_sum,
  not_indeterminate,
  order_exhausted,
  empty_set,
  fip_violation,
  not_a_filter,
  not_representable,
  bad_interval,
  unverifiable_bounds,
  depth_cap,
  unbounded_sample,
  additivity_violation,
  invalid_argument,
};

std::string_view error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Half-open byte range into parser input.
struct SourceSpan {
  std::size_t offset = 0;
  std::size_t length = 0;
};

class ParseError : public Error {
 public:
  ParseError(ErrorCode code, const std::string& message, SourceSpan span)
      : Error(code, message), span_(span) {}

  SourceSpan span() const noexcept { return span_; }

 private:
  SourceSpan span_;
};

}  // namespace hypercalc
