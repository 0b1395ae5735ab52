#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "specreg/operators.hpp"

namespace specreg {

enum class FilterKind { tikhonov, iterated_tikhonov, landweber, cutoff };

/// Generator (r_alpha) of a spectral regularization method together with its
/// error function r~_alpha(l) = (1 - l r_alpha(l))^2.
class FilterFamily {
 public:
  static FilterFamily tikhonov();
  static FilterFamily iterated_tikhonov(int m);
  /// Unit step, k = ceil(1/alpha) iterations; valid for ||L||^2 <= 1.
  static FilterFamily landweber();
  /// Spectral cutoff r = 1/l for l >= c alpha, else 0. Violates the generator
  /// axioms (iii) and (iv); kept as a negative case for the validator.
  static FilterFamily cutoff(double c);

  double r(double alpha, double lambda) const;
  /// Closed form where one exists.
  double r_tilde(double alpha, double lambda) const;

  FilterKind kind() const noexcept { return kind_; }
  const std::string& name() const noexcept { return name_; }
  std::optional<double> rho() const noexcept { return rho_; }
  std::optional<double> rho_tilde() const noexcept { return rho_tilde_; }
  /// Largest lambda the family may be evaluated at (+inf unless landweber).
  double lambda_max() const noexcept { return lambda_max_; }
  /// Landweber iteration count for a given alpha; 0 for other kinds.
  static double landweber_iterations(double alpha);

 private:
  FilterFamily() = default;
  void check_args(double alpha, double lambda) const;

  FilterKind kind_ = FilterKind::tikhonov;
  int order_ = 1;
  double threshold_ = 1.0;
  double lambda_max_ = 0.0;
  std::optional<double> rho_;
  std::optional<double> rho_tilde_;
  std::string name_;
};

/// `tikhonov`, `itik:m`, `landweber`, `cutoff:c`.
FilterFamily builtin_family(std::string_view name);

/// One grid point that decides a condition: the extremal or worst-offending
/// (alpha, lambda) and the quantity evaluated there. For the monotonicity
/// conditions `neighbor` is the adjacent grid value along the varying axis.
struct Witness {
  double alpha = 0.0;
  double lambda = 0.0;
  double value = 0.0;
  std::optional<double> neighbor;
};

struct ConditionResult {
  bool pass = true;
  std::optional<Witness> witness;
  std::string reason;
};

struct GridRegion {
  double alpha_min = 0.0, alpha_max = 0.0;
  double lambda_min = 0.0, lambda_max = 0.0;
  std::size_t alpha_points = 0, lambda_points = 0;
};

struct GeneratorReport {
  std::string family;
  double rho_hat = 0.0;          // max of r sqrt(alpha lambda) over the grid
  Witness rho_witness;
  double rho_tilde_hat = 0.0;    // max of r~_alpha(alpha) over the alpha grid
  Witness rho_tilde_witness;
  ConditionResult cond_i, cond_ii, cond_iii, cond_iv;
  GridRegion region;

  bool all_pass() const noexcept { return cond_i.pass && cond_ii.pass && cond_iii.pass && cond_iv.pass; }
};

struct ValidationOptions {
  double monotone_tol = 1e-12;
  double jump_tol = 0.5;      // relative jump between adjacent alpha points
  double jump_floor = 1e-6;   // ignore jumps where both values are below this
  double limit_margin = 1e-6; // cond iv needs rho_tilde_hat <= 1 - margin
};

/// Grid falsification of the four generator axioms. The grids are clipped to
/// the family's domain; `region` records what was actually checked.
GeneratorReport validate_generator(const FilterFamily& f, std::span<const double> alpha_grid,
                                   std::span<const double> lambda_grid, const ValidationOptions& options = {});

/// x_i = r(alpha, lambda_i) sigma_i y_i.
SpectralVector regularize(const SpectralOperator& op, const FilterFamily& f, double alpha, const SpectralVector& y);

}  // namespace specreg
