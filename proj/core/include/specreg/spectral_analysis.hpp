#pragma once

#include <optional>
#include <span>
#include <vector>

#include "specreg/filters.hpp"
#include "specreg/index_function.hpp"

namespace specreg {

/// sup of phi(lambda) r~_alpha^mu(lambda) / phi(alpha) over the grid, overall and
/// split into the regions lambda < alpha and lambda >= alpha.
struct QualificationReport {
  double mu = 0.5;
  double a_hat = 0.0;
  Witness witness;
  double a_hat_below_alpha = 0.0;
  double a_hat_above_alpha = 0.0;
  std::optional<double> a_declared;
  bool within_declared = true;
};

QualificationReport check_qualification(const IndexFunction& phi, const FilterFamily& f, double mu,
                                        std::span<const double> alpha_grid, std::span<const double> lambda_grid,
                                        std::optional<double> a_declared = std::nullopt);

struct RatioWitness {
  double alpha = 0.0, beta = 0.0, lambda = 0.0, value = 0.0;
};

struct GEntry {
  double gamma = 0.0;
  double g = 0.0;
  double alpha_at_max = 0.0;
};

/// Ratio conditions R(alpha,beta,lambda) = r~_alpha(lambda)/r~_beta(lambda) * phi(beta)/phi(alpha):
/// c_upper = sup over alpha <= beta <= lambda, c_lower = inf over lambda <= alpha <= beta.
/// The g-table parts come from the sub-homogeneity sweep.
struct RatioConditionReport {
  std::optional<double> c_upper;
  RatioWitness upper_witness;
  std::optional<double> c_lower;
  RatioWitness lower_witness;
  std::size_t triples_checked = 0;
  std::vector<GEntry> g_table;
  std::optional<double> quad_bound_c;  // smallest C with g(gamma) <= C/4 (1 + gamma^2)
};

/// g(gamma) = max over alpha of phi(gamma alpha)/phi(alpha).
RatioConditionReport check_subhomogeneity(const IndexFunction& phi, std::span<const double> gamma_grid,
                                          std::span<const double> alpha_grid);

/// Samples alpha, beta, lambda from the same grid.
RatioConditionReport check_ratio_conditions(const FilterFamily& f, const IndexFunction& phi,
                                            std::span<const double> grid);

/// Both sweeps in one report.
RatioConditionReport check_ratio_conditions(const FilterFamily& f, const IndexFunction& phi,
                                            std::span<const double> grid, std::span<const double> gamma_grid);

/// Smallest gamma with g(gamma) >= value on the piecewise linear g-table, by
/// bisection. The table's running maximum is used so the map is monotone.
double invert_g_table(const RatioConditionReport& report, double value);

}  // namespace specreg
