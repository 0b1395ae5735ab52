#include "specreg/rates_noisy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "specreg/error.hpp"
#include "specreg/numeric.hpp"
#include "specreg/rates_exact.hpp"

namespace specreg {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

double solve_alpha_delta(const SpectralOperator& op, const SpectralVector& xdag, const FilterFamily& f, double delta,
                         const AlphaDeltaOptions& options) {
  if (!(delta > 0.0) || !std::isfinite(delta)) throw Error(Errc::invalid_argument, "delta must be positive");
  const double target = delta * delta;
  auto A = [&](double alpha) { return alpha * error_exact(op, xdag, f, alpha); };

  double lo = std::clamp(op.norm_sq(), options.alpha_floor, options.alpha_ceiling);
  double hi = lo;
  double a_lo = A(lo);
  while (a_lo >= target) {
    if (lo <= options.alpha_floor) throw Error(Errc::bracket_error, "delta too small for representable alpha");
    hi = lo;
    lo = std::max(lo * 1e-2, options.alpha_floor);
    a_lo = A(lo);
  }
  if (a_lo == 0.0 && error_exact(op, xdag, f, options.alpha_floor) == 0.0) {
    throw Error(Errc::trivial_case, "exact-data error vanishes near alpha = 0");
  }
  double a_hi = A(hi);
  while (a_hi < target) {
    if (a_hi == 0.0 && hi >= options.alpha_ceiling) {
      throw Error(Errc::trivial_case, "exact-data error vanishes for every alpha");
    }
    if (hi >= options.alpha_ceiling) throw Error(Errc::bracket_error, "delta too large for representable alpha");
    lo = hi;
    hi = std::min(hi * 1e2, options.alpha_ceiling);
    a_hi = A(hi);
  }
  if (A(lo) == 0.0) {
    // the error vanishes on (0, lo]; A cannot solve the equation continuously there
    double probe = lo;
    while (probe > options.alpha_floor && error_exact(op, xdag, f, probe) == 0.0) probe *= 1e-3;
    if (error_exact(op, xdag, f, probe) == 0.0) {
      throw Error(Errc::trivial_case, "exact-data error vanishes near alpha = 0");
    }
  }

  double ulo = std::log(lo), uhi = std::log(hi);
  const double log_target = std::log(target);
  auto logA = [&](double u) {
    const double v = A(std::exp(u));
    return v > 0.0 ? std::log(v) : -kInf;
  };
  for (int it = 0; it < 300 && uhi - ulo > 1e-15 * std::max(1.0, std::abs(uhi)); ++it) {
    const double mid = 0.5 * (ulo + uhi);
    if (mid <= ulo || mid >= uhi) break;
    if (logA(mid) < log_target) {
      ulo = mid;
    } else {
      uhi = mid;
    }
  }
  const double a1 = std::exp(ulo), a2 = std::exp(uhi);
  const double r1 = std::abs(A(a1) - target), r2 = std::abs(A(a2) - target);
  const double best = r1 <= r2 ? a1 : a2;
  if (std::min(r1, r2) > options.rtol * target) {
    throw Error(Errc::discontinuous, "alpha * err(alpha) jumps over delta^2 near alpha = " + std::to_string(best));
  }
  return best;
}

double error_noisy(const SpectralOperator& op, const SpectralVector& xdag, const FilterFamily& f, double alpha,
                   const SpectralVector& y_tilde) {
  require_same_size(op, y_tilde, "error_noisy");
  const auto xa = regularize(op, f, alpha, y_tilde);
  CompensatedSum s;
  for (std::size_t i = 0; i < xdag.size(); ++i) {
    const double d = xa[i] - xdag[i];
    s += d * d;
  }
  return s.value();
}

AdversarialData build_adversarial(const SpectralOperator& op, const SpectralVector& xdag, const FilterFamily& f,
                                  double delta, double rho_tilde, std::optional<double> alpha_delta) {
  require_same_size(op, xdag, "build_adversarial");
  AdversarialData adv;
  adv.alpha_delta = alpha_delta ? *alpha_delta : solve_alpha_delta(op, xdag, f, delta);
  const double ad = adv.alpha_delta;
  const auto lambda = op.lambda();
  const auto sigma = op.sigma();

  // lambda is descending; the first index below alpha_delta is the largest eigenvalue < alpha_delta.
  adv.a_delta = ad;
  const auto below = std::partition_point(lambda.begin(), lambda.end(), [ad](double l) { return l >= ad; });
  if (below != lambda.end() && *below <= f.lambda_max() && f.r_tilde(ad, *below) < rho_tilde) adv.a_delta = *below;
  adv.r_tilde_at_edge = adv.a_delta <= f.lambda_max() ? f.r_tilde(ad, adv.a_delta) : 0.0;

  for (std::size_t i = 0; i < op.size(); ++i) {
    if (lambda[i] >= adv.a_delta && lambda[i] <= 2.0 * ad) adv.band.push_back(i);
  }
  if (adv.band.empty()) {
    throw Error(Errc::alpha_not_in_spectrum,
                "no eigenvalue in [a_delta, 2 alpha_delta] for alpha_delta = " + std::to_string(ad));
  }

  std::vector<double> z(op.size(), 0.0);
  double zn = 0.0;
  for (std::size_t i : adv.band) {
    z[i] = (f.r(ad, lambda[i]) * lambda[i] - 1.0) * sigma[i] * xdag[i];
    zn += z[i] * z[i];
  }
  if (zn == 0.0) {
    adv.fallback_used = true;
    z[adv.band.front()] = 1.0;
    zn = 1.0;
  }
  zn = std::sqrt(zn);
  const auto y = apply_forward(op, xdag);
  std::vector<double> yt(op.size());
  for (std::size_t i = 0; i < yt.size(); ++i) yt[i] = y[i] + delta * z[i] / zn;
  adv.z_delta = SpectralVector(std::move(z));
  adv.y_tilde = SpectralVector(std::move(yt));
  return adv;
}

bool NoisyRateReport::bracket_holds(double factor) const noexcept {
  if (adversarial_value > upper * factor) return false;
  if (lower && adversarial_value < *lower / factor) return false;
  return true;
}

NoisyRateReport worst_case_bracket(const SpectralOperator& op, const SpectralVector& xdag, const FilterFamily& f,
                                   double delta, std::span<const double> alpha_grid, const FilterConstants& constants) {
  if (!(delta > 0.0)) throw Error(Errc::invalid_argument, "delta must be positive");
  std::vector<double> grid(alpha_grid.begin(), alpha_grid.end());
  std::sort(grid.begin(), grid.end());
  if (grid.empty() || !(grid.front() > 0.0)) throw Error(Errc::invalid_argument, "alpha grid must be positive");

  NoisyRateReport rep;
  rep.delta = delta;
  rep.rho_hat = constants.rho_hat;
  rep.rho_tilde_hat = constants.rho_tilde_hat;
  rep.c1 = (1.0 + constants.rho_hat) * (1.0 + constants.rho_hat);
  const double s = 1.0 - std::sqrt(constants.rho_tilde_hat);
  rep.c0 = 0.5 * s * s;

  auto min_over = [&](const SpectralVector& yt, std::span<const double> alphas) {
    double best = kInf, at = 0.0;
    for (double a : alphas) {
      const double v = error_noisy(op, xdag, f, a, yt);
      if (v < best) {
        best = v;
        at = a;
      }
    }
    rep.adversarial_value = best;
    rep.adversarial_alpha = at;
  };

  if (error_exact(op, xdag, f, grid.front()) == 0.0) {
    rep.trivial = true;
    double eps = grid.front();
    for (double a : grid) {
      if (error_exact(op, xdag, f, a) != 0.0) break;
      eps = a;
    }
    rep.epsilon = eps;
    rep.upper = constants.rho_hat * constants.rho_hat * delta * delta / eps;
    // perturb along the mode with the largest noise amplification at alpha = eps
    const auto lambda = op.lambda();
    std::size_t worst = 0;
    double amp = -1.0;
    for (std::size_t i = 0; i < op.size(); ++i) {
      if (lambda[i] > f.lambda_max()) continue;
      const double r = f.r(eps, lambda[i]);
      if (lambda[i] * r * r > amp) {
        amp = lambda[i] * r * r;
        worst = i;
      }
    }
    auto y = apply_forward(op, xdag);
    std::vector<double> yt(y.coeffs().begin(), y.coeffs().end());
    yt[worst] += delta;
    min_over(SpectralVector(std::move(yt)), grid);
    return rep;
  }

  const double ad = solve_alpha_delta(op, xdag, f, delta);
  const auto adv = build_adversarial(op, xdag, f, delta, constants.rho_tilde_hat, ad);
  rep.alpha_delta = ad;
  rep.a_delta = adv.a_delta;
  rep.band_size = adv.band.size();
  rep.fallback_used = adv.fallback_used;
  rep.upper = rep.c1 * delta * delta / ad;
  rep.lower = rep.c0 * delta * delta / ad;
  grid.push_back(ad);
  min_over(adv.y_tilde, grid);
  return rep;
}

RateTransfer::RateTransfer(IndexFunction phi) : phi_(std::move(phi)) {}

double RateTransfer::phi_tilde(double alpha) const {
  if (!(alpha > 0.0)) return 0.0;
  return std::sqrt(alpha * phi_(alpha));
}

double RateTransfer::phi_tilde_inverse(double delta) const {
  if (!(delta > 0.0) || !std::isfinite(delta)) throw Error(Errc::delta_out_of_range, "delta must be positive");
  double ulo = std::log(1e-300), uhi = std::log(1e300);
  auto f = [&](double u) { return phi_tilde(std::exp(u)); };
  if (!(f(ulo) < delta) || !(f(uhi) > delta)) {
    throw Error(Errc::delta_out_of_range, "delta outside the range of phi~");
  }
  for (int it = 0; it < 400 && uhi - ulo > 1e-14; ++it) {
    const double mid = 0.5 * (ulo + uhi);
    if (f(mid) < delta) {
      ulo = mid;
    } else {
      uhi = mid;
    }
  }
  return std::exp(0.5 * (ulo + uhi));
}

double RateTransfer::psi_by_inversion(double delta) const { return delta * delta / phi_tilde_inverse(delta); }

double RateTransfer::psi(double delta) const {
  if (phi_.kind() == IndexFunction::Kind::holder) {
    if (!(delta > 0.0) || !std::isfinite(delta)) throw Error(Errc::delta_out_of_range, "delta must be positive");
    const double q = phi_.exponent();
    return std::pow(delta, 2.0 * q / (q + 1.0));
  }
  return psi_by_inversion(delta);
}

double psi_of_delta(const IndexFunction& phi, double delta) { return RateTransfer(phi).psi(delta); }

double log_psi_residual(double nu, double delta, double psi) {
  return psi - std::pow(std::abs(std::log(delta * delta / psi)), -nu);
}

double solve_log_psi(double nu, double delta) {
  if (!(nu > 0.0)) throw Error(Errc::invalid_argument, "nu must be positive");
  if (!(delta > 0.0)) throw Error(Errc::invalid_argument, "delta must be positive");
  // psi = |log(delta^2/psi)|^-nu  <=>  log delta = log(psi)/2 - psi^(-1/nu)/2,
  // whose right side is strictly increasing in log psi.
  const double ld = std::log(delta);
  auto g = [&](double lp) { return 0.5 * lp - 0.5 * std::exp(-lp / nu) - ld; };
  if (!(g(0.0) > 0.0)) throw Error(Errc::delta_too_large, "no fixed point psi in (0,1) for this delta");
  double lo = -1.0;
  while (g(lo) > 0.0) lo *= 2.0;
  double hi = 0.0;
  for (int it = 0; it < 400 && hi - lo > 1e-16 * std::max(1.0, std::abs(lo)); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (g(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return std::exp(0.5 * (lo + hi));
}

}  // namespace specreg
