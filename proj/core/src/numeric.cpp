#include "specreg/numeric.hpp"

#include <algorithm>
#include <string>

namespace specreg {

std::vector<double> log_grid(double lo, double hi, int per_decade) {
  if (!(lo > 0.0) || !(hi > lo) || per_decade < 1 || !std::isfinite(hi)) {
    throw Error(Errc::invalid_argument, "log_grid needs 0 < lo < hi and per_decade >= 1");
  }
  const double decades = std::log10(hi / lo);
  const auto intervals = static_cast<std::size_t>(std::max(1.0, std::round(decades * per_decade)));
  std::vector<double> grid(intervals + 1);
  const double step = decades / static_cast<double>(intervals);
  const double base = std::log10(lo);
  for (std::size_t k = 0; k <= intervals; ++k) {
    grid[k] = std::pow(10.0, base + step * static_cast<double>(k));
  }
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

bool is_log_spaced(std::span<const double> grid, double rtol) {
  if (grid.size() < 3) {
    for (double g : grid) {
      if (!(g > 0.0)) return false;
    }
    return true;
  }
  for (double g : grid) {
    if (!(g > 0.0) || !std::isfinite(g)) return false;
  }
  const double ref = std::log(grid[1] / grid[0]);
  if (ref == 0.0) return false;
  for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
    const double step = std::log(grid[i + 1] / grid[i]);
    if (std::abs(step - ref) > rtol * std::abs(ref) + 1e-12) return false;
  }
  return true;
}

LinearFit least_squares(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw Error(Errc::length_mismatch, "least_squares: x and y differ in length");
  }
  const std::size_t n = x.size();
  if (n < 2) throw Error(Errc::invalid_argument, "least_squares needs at least two points");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) throw Error(Errc::invalid_argument, "least_squares: degenerate abscissae");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - (fit.slope * x[i] + fit.intercept);
    ss_res += r * r;
  }
  fit.r_squared = syy == 0.0 ? 1.0 : 1.0 - ss_res / syy;
  fit.points = n;
  return fit;
}

}  // namespace specreg
