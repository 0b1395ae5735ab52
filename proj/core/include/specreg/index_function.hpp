#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace specreg {

/// Rate function phi: (0, inf) -> (0, inf), increasing.
///
/// Three kinds are supported:
///  - holder(q):          phi(l) = l^q
///  - logarithmic(nu):    phi(l) = |log l|^(-nu) below the cap point, constant
///                        (= phi(cap)) from the cap on. The default cap is
///                        e^-(1+nu); `logarithmic_qualification(nu, mu)` uses
///                        e^-(nu/mu) instead.
///  - tabulated(knots):   piecewise linear through (lambda_k, phi_k), constant
///                        outside the knot range.
class IndexFunction {
 public:
  enum class Kind { holder, logarithmic, tabulated };

  static IndexFunction holder(double q);
  static IndexFunction logarithmic(double nu);
  static IndexFunction logarithmic(double nu, double cap);
  static IndexFunction logarithmic_qualification(double nu, double mu);
  static IndexFunction tabulated(std::vector<double> lambda, std::vector<double> phi);

  /// Parses `holder:q`, `log:nu[:cap]` or `table:path.csv` (CSV `lambda,phi`).
  static IndexFunction parse(std::string_view spec);

  double operator()(double lambda) const;

  Kind kind() const noexcept { return kind_; }
  /// q for holder, nu for logarithmic, 0 for tabulated.
  double exponent() const noexcept { return exponent_; }
  /// Upper end of the logarithmic branch; +inf for the other kinds.
  double cap() const noexcept { return cap_; }
  const std::vector<double>& knots() const noexcept { return knot_lambda_; }
  const std::string& describe() const noexcept { return name_; }

 private:
  IndexFunction() = default;

  Kind kind_ = Kind::holder;
  double exponent_ = 1.0;
  double cap_ = 0.0;
  double cap_value_ = 0.0;
  std::vector<double> knot_lambda_;
  std::vector<double> knot_phi_;
  std::string name_;
};

}  // namespace specreg
