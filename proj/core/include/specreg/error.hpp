#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace specreg {

enum class Errc {
  invalid_argument,
  length_mismatch,
  profile_not_increasing,
  out_of_range,
  unknown_name,
  cannot_fit_log,
  window_in_cap,
  bracket_error,
  trivial_case,
  discontinuous,
  alpha_not_in_spectrum,
  delta_out_of_range,
  delta_too_large,
  division_error,
  precondition_violated,
  parse_error,
};

std::string_view to_string(Errc code) noexcept;

/// Every failure raised by the library carries one of the codes above so that
/// callers (and the CLI) can branch on the kind of failure.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace specreg
