#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "specreg/filters.hpp"
#include "specreg/index_function.hpp"
#include "specreg/operators.hpp"

namespace specreg {

struct AlphaDeltaOptions {
  double rtol = 1e-10;
  double alpha_floor = 1e-300;
  double alpha_ceiling = 1e300;
};

/// Solves alpha * ||x_alpha(y) - x-dagger||^2 = delta^2 by bisection in log alpha.
/// A(alpha) = alpha err(alpha) is strictly increasing whenever the exact error
/// never vanishes. Throws trivial_case when it does, bracket_error when delta
/// is out of reach, and discontinuous when A jumps over delta^2.
double solve_alpha_delta(const SpectralOperator& op, const SpectralVector& xdag, const FilterFamily& f, double delta,
                         const AlphaDeltaOptions& options = {});

/// ||x_alpha(y_tilde) - x-dagger||^2.
double error_noisy(const SpectralOperator& op, const SpectralVector& xdag, const FilterFamily& f, double alpha,
                   const SpectralVector& y_tilde);

struct AdversarialData {
  double alpha_delta = 0.0;
  double a_delta = 0.0;
  double r_tilde_at_edge = 0.0;     // r~_{alpha_delta}(a_delta)
  std::vector<std::size_t> band;    // modes with lambda_i in [a_delta, 2 alpha_delta]
  SpectralVector z_delta;
  SpectralVector y_tilde;
  bool fallback_used = false;       // residual vanished on the band
};

/// Builds y~ = y + delta z / ||z|| with z the band restriction of the exact-data
/// residual r_{alpha_delta}(LL*) LL* y - y. a_delta is the largest eigenvalue
/// below alpha_delta with r~_{alpha_delta} < rho_tilde, or alpha_delta itself
/// when no such eigenvalue exists.
AdversarialData build_adversarial(const SpectralOperator& op, const SpectralVector& xdag, const FilterFamily& f,
                                  double delta, double rho_tilde, std::optional<double> alpha_delta = std::nullopt);

struct FilterConstants {
  double rho_hat = 0.0;
  double rho_tilde_hat = 0.0;
};

struct NoisyRateReport {
  double delta = 0.0;
  double rho_hat = 0.0;
  double rho_tilde_hat = 0.0;
  double c0 = 0.0;  // (1 - sqrt(rho_tilde))^2 / 2
  double c1 = 0.0;  // (1 + rho)^2
  std::optional<double> alpha_delta;
  std::optional<double> a_delta;
  std::size_t band_size = 0;
  bool fallback_used = false;
  std::optional<double> lower;
  double upper = 0.0;
  double adversarial_value = 0.0;
  double adversarial_alpha = 0.0;
  bool trivial = false;
  std::optional<double> epsilon;

  /// lower / factor <= adversarial <= upper * factor (the lower side is skipped
  /// when no lower bound applies).
  bool bracket_holds(double factor) const noexcept;
};

/// Two-sided bracket of the worst-case error at noise level delta.
NoisyRateReport worst_case_bracket(const SpectralOperator& op, const SpectralVector& xdag, const FilterFamily& f,
                                   double delta, std::span<const double> alpha_grid, const FilterConstants& constants);

/// phi~(alpha) = sqrt(alpha phi(alpha)) and psi(delta) = delta^2 / phi~^-1(delta).
class RateTransfer {
 public:
  explicit RateTransfer(IndexFunction phi);

  double phi_tilde(double alpha) const;
  double phi_tilde_inverse(double delta) const;
  /// Closed form delta^(2q/(q+1)) for holder(q); inversion otherwise.
  double psi(double delta) const;
  double psi_by_inversion(double delta) const;
  const IndexFunction& phi() const noexcept { return phi_; }

 private:
  IndexFunction phi_;
};

double psi_of_delta(const IndexFunction& phi, double delta);

/// Fixed point of psi = |log(delta^2 / psi)|^-nu on (0,1), i.e. the noisy rate
/// for the logarithmic index function on its log branch.
double solve_log_psi(double nu, double delta);

/// psi - |log(delta^2/psi)|^-nu.
double log_psi_residual(double nu, double delta, double psi);

}  // namespace specreg
