#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "specreg/filters.hpp"
#include "specreg/index_function.hpp"
#include "specreg/numeric.hpp"
#include "specreg/operators.hpp"

namespace specreg {

struct VariationalTestSet {
  std::size_t basis = 0;
  std::size_t head = 0;
  std::size_t tail = 0;
  std::size_t full = 0;
  std::size_t random = 0;
  std::uint64_t seed = 0;

  std::size_t total() const noexcept { return basis + head + tail + full + random; }
};

struct VariationalReport {
  double nu = 0.5;
  /// Max of <x, v> / (||phi(L*L) v||^nu ||v||^(1-nu)) over the test set. The
  /// true constant is a sup over all v, so this is a lower bound.
  double c_vi = 0.0;
  std::string c_vi_kind = "lower-bound";
  std::string c_vi_argmax;
  /// max_i e(lambda_i) / phi(lambda_i)^(2 nu), exact.
  double c_spec = 0.0;
  /// 2 C_spec^((1-nu)/2) c^nu with c^2 = C_spec (1 + 1/(1-nu)); undefined at nu = 1.
  std::optional<double> converse_bound;
  VariationalTestSet test_set;

  bool forward_holds(double tol) const noexcept { return c_spec <= c_vi * c_vi + tol; }
  bool converse_holds(double tol) const noexcept { return !converse_bound || c_vi <= *converse_bound + tol; }
};

VariationalReport vi_constant(const SpectralOperator& op, const SpectralVector& xdag, const IndexFunction& phi,
                              double nu, std::size_t samples, std::uint64_t seed);

struct SscWitness {
  double nu = 0.5;
  std::vector<std::size_t> dims;
  std::vector<double> witness_norm_sq;  // sum_{i <= n_k} x_i^2 / phi(lambda_i)^(2 nu)
  std::vector<double> log_phi_ratio;    // log(phi(lambda_1) / phi(lambda_{n_k}))
};

SscWitness ssc_witness(const SpectralOperator& op, const SpectralVector& xdag, const IndexFunction& phi, double nu,
                       std::span<const std::size_t> dims);

/// x_i = phi(lambda_i)^nu omega_i.
SpectralVector make_solution_from_source(const SpectralOperator& op, const IndexFunction& phi, double nu,
                                         const SpectralVector& omega);

/// xi_i = x_i / phi(lambda_i) for lambda_i > alpha, zero otherwise.
SpectralVector xi_tail(const SpectralOperator& op, const SpectralVector& xdag, const IndexFunction& phi, double alpha);

struct DistanceResult {
  double d = 0.0;
  double mu = 0.0;  // +inf at R = 0
  SpectralVector xi;
};

/// inf over ||xi|| <= R of ||x - phi(L*L) xi||, from the KKT conditions.
DistanceResult distance_function(const SpectralOperator& op, const SpectralVector& xdag, const IndexFunction& phi,
                                 double radius);

struct DistanceRow {
  double radius = 0.0;
  double d = 0.0;
  double mu = 0.0;
};

struct DistanceProfile {
  std::vector<DistanceRow> rows;
  std::optional<LinearFit> fit;  // log d against log R over rows with d > 0
  bool non_increasing = true;
  bool convex = true;
};

DistanceProfile distance_profile(const SpectralOperator& op, const SpectralVector& xdag, const IndexFunction& phi,
                                 std::span<const double> radius_grid);

struct DistanceBoundReport {
  double a_hat = 0.0;
  std::size_t pairs_checked = 0;
  std::size_t violations = 0;
  double max_ratio = 0.0;  // max of lhs / rhs
  double worst_alpha = 0.0;
  std::size_t worst_sample = 0;

  bool pass() const noexcept { return violations == 0; }
};

/// Checks ||x_alpha(y) - x|| <= ||x - phi(L*L) xi|| + A phi(alpha) ||xi|| for all
/// samples and grid points, with A from the mu = 1/2 qualification check on the
/// alpha grid and the spectrum. Throws precondition_violated when A is not
/// finite or exceeds a_max.
DistanceBoundReport distance_error_bound_check(const SpectralOperator& op, const SpectralVector& xdag,
                                               const FilterFamily& f, const IndexFunction& phi,
                                               std::span<const SpectralVector> xi_samples,
                                               std::span<const double> alpha_grid,
                                               std::optional<double> a_max = std::nullopt);

}  // namespace specreg
