#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "specreg/error.hpp"

namespace specreg {

/// Ascending log-spaced grid from `lo` to `hi` (both included) with
/// `per_decade` intervals per factor of ten.
std::vector<double> log_grid(double lo, double hi, int per_decade);

/// True when consecutive ratios agree to `rtol` (ascending or descending).
bool is_log_spaced(std::span<const double> grid, double rtol = 1e-6);

/// Neumaier compensated summation.
class CompensatedSum {
 public:
  void add(double v) noexcept {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  CompensatedSum& operator+=(double v) noexcept {
    add(v);
    return *this;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::size_t points = 0;
};

/// Ordinary least squares y = slope * x + intercept.
LinearFit least_squares(std::span<const double> x, std::span<const double> y);

/// Bisection for an increasing function: returns x in [lo, hi] with
/// f(x) ~ target. Stops when hi - lo <= xtol or after max_iter halvings.
/// Requires f(lo) <= target <= f(hi); the caller checks the bracket.
template <class F>
double bisect_increasing(F&& f, double lo, double hi, double target, double xtol,
                         int max_iter = 400) {
  for (int it = 0; it < max_iter && hi - lo > xtol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (f(mid) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace specreg
