#include "specreg/error.hpp"

namespace specreg {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_argument: return "invalid-argument";
    case Errc::length_mismatch: return "length-mismatch";
    case Errc::profile_not_increasing: return "profile-not-increasing";
    case Errc::out_of_range: return "out-of-range";
    case Errc::unknown_name: return "unknown-name";
    case Errc::cannot_fit_log: return "cannot-fit-log";
    case Errc::window_in_cap: return "window-in-cap";
    case Errc::bracket_error: return "bracket-error";
    case Errc::trivial_case: return "trivial-case";
    case Errc::discontinuous: return "discontinuous";
    case Errc::alpha_not_in_spectrum: return "alpha-not-in-spectrum";
    case Errc::delta_out_of_range: return "delta-out-of-range";
    case Errc::delta_too_large: return "delta-too-large";
    case Errc::division_error: return "division-error";
    case Errc::precondition_violated: return "precondition-violated";
    case Errc::parse_error: return "parse-error";
  }
  return "unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace specreg
