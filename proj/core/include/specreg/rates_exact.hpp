#pragma once

#include <span>
#include <string>
#include <vector>

#include "specreg/filters.hpp"
#include "specreg/operators.hpp"

namespace specreg {

/// ||x_alpha(y) - x-dagger||^2 for exact data y = L x-dagger, via the spectral sum
/// sum_i r~(alpha, lambda_i) x_i^2.
double error_exact(const SpectralOperator& op, const SpectralVector& xdag, const FilterFamily& f, double alpha);

/// Same quantity computed by regularizing y = L x-dagger and subtracting; used
/// as the cross-check path.
double error_by_reconstruction(const SpectralOperator& op, const SpectralVector& xdag, const FilterFamily& f,
                               double alpha);

struct Provenance {
  std::string operator_id;
  std::string filter;
  std::string profile;
};

/// Rows sorted by alpha, descending.
struct ErrorCurve {
  std::vector<double> alpha;
  std::vector<double> err_sq;
  Provenance provenance;

  std::size_t size() const noexcept { return alpha.size(); }
};

/// Throws Errc::invalid_argument if the sweep is not monotone in alpha.
ErrorCurve error_curve(const SpectralOperator& op, const SpectralVector& xdag, const FilterFamily& f,
                       std::span<const double> alpha_grid, Provenance provenance = {});

struct FitWindow {
  double alpha_min = 0.0;
  double alpha_max = 0.0;
};

/// Curve range with the top two and bottom two decades removed.
FitWindow default_fit_window(const ErrorCurve& curve);

enum class RateModel { power, logarithmic };

struct RateFit {
  RateModel model = RateModel::power;
  double nu = 0.0;           // logarithmic model exponent
  double slope = 0.0;        // power model
  double r_squared = 0.0;    // power model
  double ratio_min = 0.0;    // logarithmic model: min/max of err_sq |log alpha|^nu
  double ratio_max = 0.0;
  double spread = 1.0;       // ratio_max / ratio_min
  FitWindow window;
  std::size_t points = 0;

  /// slope for power fits, spread for logarithmic fits.
  double slope_or_spread() const noexcept { return model == RateModel::power ? slope : spread; }
};

/// Least-squares slope of log err_sq against log alpha. Needs >= 10 points.
RateFit fit_power_rate(const ErrorCurve& curve, FitWindow window);

/// min/max of err_sq * |log alpha|^nu over the window, which must stay below
/// `cap` (the end of the logarithmic branch).
RateFit fit_log_rate(const ErrorCurve& curve, double nu, FitWindow window, double cap);

}  // namespace specreg
