#include "specreg/rates_exact.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "specreg/error.hpp"
#include "specreg/numeric.hpp"

namespace specreg {

double error_exact(const SpectralOperator& op, const SpectralVector& xdag, const FilterFamily& f, double alpha) {
  if (!(alpha > 0.0)) throw Error(Errc::invalid_argument, "error_exact: alpha must be positive");
  require_same_size(op, xdag, "error_exact");
  const auto lambda = op.lambda();
  CompensatedSum s;
  for (std::size_t i = 0; i < xdag.size(); ++i) {
    const double x = xdag[i];
    if (x != 0.0) s += f.r_tilde(alpha, lambda[i]) * x * x;
  }
  return s.value();
}

double error_by_reconstruction(const SpectralOperator& op, const SpectralVector& xdag, const FilterFamily& f,
                               double alpha) {
  const auto xa = regularize(op, f, alpha, apply_forward(op, xdag));
  CompensatedSum s;
  for (std::size_t i = 0; i < xdag.size(); ++i) {
    const double d = xa[i] - xdag[i];
    s += d * d;
  }
  return s.value();
}

ErrorCurve error_curve(const SpectralOperator& op, const SpectralVector& xdag, const FilterFamily& f,
                       std::span<const double> alpha_grid, Provenance provenance) {
  ErrorCurve curve;
  curve.alpha.assign(alpha_grid.begin(), alpha_grid.end());
  std::sort(curve.alpha.begin(), curve.alpha.end(), std::greater<>());
  curve.err_sq.reserve(curve.alpha.size());
  for (double a : curve.alpha) curve.err_sq.push_back(error_exact(op, xdag, f, a));
  const double scale = xdag.norm_sq();
  for (std::size_t i = 1; i < curve.size(); ++i) {
    // descending alpha: err_sq must not grow
    if (curve.err_sq[i] > curve.err_sq[i - 1] + 1e-12 * scale) {
      throw Error(Errc::invalid_argument, "error curve is not monotone in alpha for " + f.name());
    }
  }
  curve.provenance = std::move(provenance);
  return curve;
}

FitWindow default_fit_window(const ErrorCurve& curve) {
  if (curve.alpha.empty()) throw Error(Errc::invalid_argument, "empty curve");
  const auto [lo, hi] = std::minmax_element(curve.alpha.begin(), curve.alpha.end());
  FitWindow w{*lo * 100.0, *hi / 100.0};
  if (!(w.alpha_min < w.alpha_max)) w = {*lo, *hi};
  return w;
}

namespace {

void collect_window(const ErrorCurve& curve, FitWindow window, std::vector<double>& a, std::vector<double>& e) {
  if (!(window.alpha_min > 0.0) || !(window.alpha_max >= window.alpha_min)) {
    throw Error(Errc::invalid_argument, "fit window must satisfy 0 < alpha_min <= alpha_max");
  }
  const double slack = 1e-12;
  for (std::size_t i = 0; i < curve.size(); ++i) {
    const double al = curve.alpha[i];
    if (al >= window.alpha_min * (1 - slack) && al <= window.alpha_max * (1 + slack)) {
      a.push_back(al);
      e.push_back(curve.err_sq[i]);
    }
  }
}

}  // namespace

RateFit fit_power_rate(const ErrorCurve& curve, FitWindow window) {
  std::vector<double> a, e;
  collect_window(curve, window, a, e);
  if (a.size() < 10) throw Error(Errc::invalid_argument, "power fit needs at least 10 points in the window");
  std::vector<double> la(a.size()), le(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(e[i] > 0.0)) throw Error(Errc::cannot_fit_log, "zero error value inside the fit window");
    la[i] = std::log(a[i]);
    le[i] = std::log(e[i]);
  }
  const auto lf = least_squares(la, le);
  RateFit fit;
  fit.model = RateModel::power;
  fit.slope = lf.slope;
  fit.r_squared = lf.r_squared;
  fit.window = window;
  fit.points = a.size();
  return fit;
}

RateFit fit_log_rate(const ErrorCurve& curve, double nu, FitWindow window, double cap) {
  if (!(nu > 0.0)) throw Error(Errc::invalid_argument, "logarithmic fit needs nu > 0");
  if (!(window.alpha_max < cap) || !(window.alpha_max < 1.0)) {
    throw Error(Errc::window_in_cap, "fit window reaches the constant branch of the logarithmic rate");
  }
  std::vector<double> a, e;
  collect_window(curve, window, a, e);
  if (a.size() < 2) throw Error(Errc::invalid_argument, "logarithmic fit needs at least 2 points in the window");
  RateFit fit;
  fit.model = RateModel::logarithmic;
  fit.nu = nu;
  fit.window = window;
  fit.points = a.size();
  fit.ratio_min = std::numeric_limits<double>::infinity();
  fit.ratio_max = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(e[i] > 0.0)) throw Error(Errc::cannot_fit_log, "zero error value inside the fit window");
    const double v = e[i] * std::pow(std::abs(std::log(a[i])), nu);
    fit.ratio_min = std::min(fit.ratio_min, v);
    fit.ratio_max = std::max(fit.ratio_max, v);
  }
  fit.spread = fit.ratio_max / fit.ratio_min;
  return fit;
}

}  // namespace specreg
