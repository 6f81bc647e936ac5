#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace groundstate {

enum class ErrorKind {
  invalid_dimension,
  invalid_size,
  grid_mismatch,
  non_finite,
  nonpositive_dilation,
  negative_t,
  zero_function,
  not_in_lambda,
  no_sign_change,
  multiple_sign_changes,
  non_convergence,
  left_lambda,
  constraint_infeasible,
  bracket_not_found,
  stiff_failure,
  no_positivity_ball,
  precondition_failed,
  config_error,
  io_error,
};

std::string_view to_string(ErrorKind kind);

/// Every failure surfaced by the library carries one of the kinds above so
/// callers (the CLI in particular) can map it onto an exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace groundstate
