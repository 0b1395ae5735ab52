#include "specreg/source_conditions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "specreg/error.hpp"
#include "specreg/rates_exact.hpp"
#include "specreg/spectral_analysis.hpp"

namespace specreg {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> phi_at_modes(const SpectralOperator& op, const IndexFunction& phi) {
  std::vector<double> out(op.size());
  const auto lambda = op.lambda();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = phi(lambda[i]);
  return out;
}

void require_nu(double nu) {
  if (!(nu > 0.0 && nu <= 1.0)) throw Error(Errc::invalid_argument, "nu must lie in (0, 1]");
}

// <x, v> / (||phi v||^nu ||v||^(1-nu)) from the three scalar ingredients.
double vi_ratio(double inner, double phi_norm_sq, double norm_sq, double nu) {
  if (norm_sq <= 0.0 || inner <= 0.0) return 0.0;
  if (phi_norm_sq <= 0.0) throw Error(Errc::division_error, "phi(L*L) v vanishes on a test vector");
  return inner / (std::pow(phi_norm_sq, 0.5 * nu) * std::pow(norm_sq, 0.5 * (1.0 - nu)));
}

double xi_norm_sq(std::span<const double> x, std::span<const double> ph, double mu) {
  CompensatedSum s;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double v = ph[i] * x[i] / (ph[i] * ph[i] + mu);
    s += v * v;
  }
  return s.value();
}

}  // namespace

VariationalReport vi_constant(const SpectralOperator& op, const SpectralVector& xdag, const IndexFunction& phi,
                              double nu, std::size_t samples, std::uint64_t seed) {
  require_nu(nu);
  require_same_size(op, xdag, "vi_constant");
  const std::size_t n = op.size();
  const auto ph = phi_at_modes(op, phi);
  for (double p : ph) {
    if (!(p > 0.0)) throw Error(Errc::division_error, "phi vanishes on the spectrum");
  }
  const auto x = xdag.coeffs();

  VariationalReport rep;
  rep.nu = nu;
  rep.test_set.seed = seed;
  auto consider = [&](double r, const char* what) {
    if (r > rep.c_vi) {
      rep.c_vi = r;
      rep.c_vi_argmax = what;
    }
  };

  // basis vectors, sign chosen so that <x, v> >= 0
  for (std::size_t i = 0; i < n; ++i) consider(vi_ratio(std::abs(x[i]), ph[i] * ph[i], 1.0, nu), "basis");
  rep.test_set.basis = n;

  // head E_[0,lambda_k] x = modes k..n-1; tail = modes 0..k-1
  std::vector<double> suf_x(n + 1, 0.0), suf_px(n + 1, 0.0);
  {
    CompensatedSum sx, spx;
    for (std::size_t i = n; i-- > 0;) {
      sx += x[i] * x[i];
      spx += ph[i] * ph[i] * x[i] * x[i];
      suf_x[i] = sx.value();
      suf_px[i] = spx.value();
    }
  }
  const double tot_x = suf_x[0], tot_px = suf_px[0];
  for (std::size_t k = 0; k < n; ++k) {
    consider(vi_ratio(suf_x[k], suf_px[k], suf_x[k], nu), "head");
    if (k > 0) {
      const double tx = std::max(tot_x - suf_x[k], 0.0);
      const double tpx = std::max(tot_px - suf_px[k], 0.0);
      consider(vi_ratio(tx, tpx, tx, nu), "tail");
    }
  }
  rep.test_set.head = n;
  rep.test_set.tail = n - 1;

  consider(vi_ratio(tot_x, tot_px, tot_x, nu), "full");
  rep.test_set.full = 1;

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> v(n);
  for (std::size_t s = 0; s < samples; ++s) {
    for (auto& vi : v) vi = gauss(rng);
    CompensatedSum inner, pn, nn;
    for (std::size_t i = 0; i < n; ++i) {
      inner += x[i] * v[i];
      pn += ph[i] * ph[i] * v[i] * v[i];
      nn += v[i] * v[i];
    }
    consider(vi_ratio(std::abs(inner.value()), pn.value(), nn.value(), nu), "random");
  }
  rep.test_set.random = samples;

  const auto e = spectral_function_at_modes(op, xdag);
  for (std::size_t i = 0; i < n; ++i) rep.c_spec = std::max(rep.c_spec, e[i] / std::pow(ph[i], 2.0 * nu));
  if (nu < 1.0) {
    const double c = std::sqrt(rep.c_spec * (1.0 + 1.0 / (1.0 - nu)));
    rep.converse_bound = 2.0 * std::pow(rep.c_spec, 0.5 * (1.0 - nu)) * std::pow(c, nu);
  }
  return rep;
}

SscWitness ssc_witness(const SpectralOperator& op, const SpectralVector& xdag, const IndexFunction& phi, double nu,
                       std::span<const std::size_t> dims) {
  require_nu(nu);
  require_same_size(op, xdag, "ssc_witness");
  SscWitness w;
  w.nu = nu;
  std::size_t prev = 0;
  for (std::size_t d : dims) {
    if (d <= prev || d > op.size()) {
      throw Error(Errc::invalid_argument, "truncation dims must be increasing and within the spectrum");
    }
    prev = d;
  }
  const auto lambda = op.lambda();
  const double phi1 = phi(lambda[0]);
  CompensatedSum s;
  std::size_t i = 0;
  for (std::size_t d : dims) {
    for (; i < d; ++i) {
      const double p = phi(lambda[i]);
      if (!(p > 0.0)) throw Error(Errc::division_error, "phi vanishes on the spectrum");
      s += xdag[i] * xdag[i] / std::pow(p, 2.0 * nu);
    }
    w.dims.push_back(d);
    w.witness_norm_sq.push_back(s.value());
    w.log_phi_ratio.push_back(std::log(phi1 / phi(lambda[d - 1])));
  }
  return w;
}

SpectralVector make_solution_from_source(const SpectralOperator& op, const IndexFunction& phi, double nu,
                                         const SpectralVector& omega) {
  require_same_size(op, omega, "make_solution_from_source");
  std::vector<double> x(op.size());
  const auto lambda = op.lambda();
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::pow(phi(lambda[i]), nu) * omega[i];
  return SpectralVector(std::move(x));
}

SpectralVector xi_tail(const SpectralOperator& op, const SpectralVector& xdag, const IndexFunction& phi,
                       double alpha) {
  require_same_size(op, xdag, "xi_tail");
  std::vector<double> xi(op.size(), 0.0);
  const auto lambda = op.lambda();
  for (std::size_t i = 0; i < xi.size() && lambda[i] > alpha; ++i) {
    const double p = phi(lambda[i]);
    if (!(p > 0.0)) throw Error(Errc::division_error, "phi vanishes on the spectrum");
    xi[i] = xdag[i] / p;
  }
  return SpectralVector(std::move(xi));
}

DistanceResult distance_function(const SpectralOperator& op, const SpectralVector& xdag, const IndexFunction& phi,
                                 double radius) {
  require_same_size(op, xdag, "distance_function");
  if (!(radius >= 0.0) || !std::isfinite(radius)) throw Error(Errc::invalid_argument, "radius must be >= 0");
  const std::size_t n = op.size();
  const auto x = xdag.coeffs();
  const auto ph = phi_at_modes(op, phi);

  DistanceResult res;
  if (radius == 0.0) {
    res.d = xdag.norm();
    res.mu = kInf;
    res.xi = SpectralVector::zeros(n);
    return res;
  }

  // exact representation when sum (x/phi)^2 <= R^2
  CompensatedSum rep;
  bool representable = true;
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] == 0.0) continue;
    if (!(ph[i] > 0.0)) {
      representable = false;
      break;
    }
    rep += (x[i] / ph[i]) * (x[i] / ph[i]);
  }
  if (representable && rep.value() <= radius * radius) {
    std::vector<double> xi(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      if (x[i] != 0.0) xi[i] = x[i] / ph[i];
    }
    res.d = 0.0;
    res.mu = 0.0;
    res.xi = SpectralVector(std::move(xi));
    return res;
  }

  // ||xi(mu)|| is strictly decreasing in mu and below R once mu > phi_max ||x|| / R
  const double r2 = radius * radius;
  const double phi_max = *std::max_element(ph.begin(), ph.end());
  double hi = std::max(phi_max * xdag.norm() / radius, std::numeric_limits<double>::min());
  while (xi_norm_sq(x, ph, hi) >= r2) hi *= 2.0;
  double lo = hi;
  while (lo > 1e-300 && xi_norm_sq(x, ph, lo) <= r2) lo *= 1e-3;
  double mu = hi;
  if (xi_norm_sq(x, ph, lo) > r2) {
    double ulo = std::log(lo), uhi = std::log(hi);
    for (int it = 0; it < 400 && uhi - ulo > 1e-13; ++it) {
      const double mid = 0.5 * (ulo + uhi);
      if (mid <= ulo || mid >= uhi) break;
      if (xi_norm_sq(x, ph, std::exp(mid)) > r2) {
        ulo = mid;
      } else {
        uhi = mid;
      }
    }
    mu = std::exp(uhi);  // feasible side
  } else {
    mu = lo;
  }

  std::vector<double> xi(n);
  CompensatedSum d2;
  for (std::size_t i = 0; i < n; ++i) {
    const double den = ph[i] * ph[i] + mu;
    xi[i] = ph[i] * x[i] / den;
    const double t = x[i] * mu / den;
    d2 += t * t;
  }
  res.d = std::sqrt(d2.value());
  res.mu = mu;
  res.xi = SpectralVector(std::move(xi));
  return res;
}

DistanceProfile distance_profile(const SpectralOperator& op, const SpectralVector& xdag, const IndexFunction& phi,
                                 std::span<const double> radius_grid) {
  if (radius_grid.empty()) throw Error(Errc::invalid_argument, "empty radius grid");
  for (std::size_t i = 0; i < radius_grid.size(); ++i) {
    if (!(radius_grid[i] > 0.0) || (i > 0 && !(radius_grid[i] > radius_grid[i - 1]))) {
      throw Error(Errc::invalid_argument, "radius grid must be positive and increasing");
    }
  }
  if (!is_log_spaced(radius_grid)) throw Error(Errc::invalid_argument, "radius grid must be log-spaced");

  DistanceProfile prof;
  std::vector<double> lr, ld;
  for (double r : radius_grid) {
    const auto res = distance_function(op, xdag, phi, r);
    prof.rows.push_back({r, res.d, res.mu});
    if (res.d > 0.0) {
      lr.push_back(std::log(r));
      ld.push_back(std::log(res.d));
    }
  }
  const double scale = std::max(xdag.norm(), 1e-300);
  for (std::size_t i = 1; i < prof.rows.size(); ++i) {
    if (prof.rows[i].d > prof.rows[i - 1].d + 1e-12 * scale) prof.non_increasing = false;
  }
  // convexity on a non-uniform grid: slopes between neighbours must not decrease
  for (std::size_t i = 1; i + 1 < prof.rows.size(); ++i) {
    const auto& a = prof.rows[i - 1];
    const auto& b = prof.rows[i];
    const auto& c = prof.rows[i + 1];
    const double s1 = (b.d - a.d) / (b.radius - a.radius);
    const double s2 = (c.d - b.d) / (c.radius - b.radius);
    if (s2 < s1 - 1e-9 * (std::abs(s1) + std::abs(s2)) - 1e-14 * scale) prof.convex = false;
  }
  if (lr.size() >= 2) prof.fit = least_squares(lr, ld);
  return prof;
}

DistanceBoundReport distance_error_bound_check(const SpectralOperator& op, const SpectralVector& xdag,
                                               const FilterFamily& f, const IndexFunction& phi,
                                               std::span<const SpectralVector> xi_samples,
                                               std::span<const double> alpha_grid, std::optional<double> a_max) {
  require_same_size(op, xdag, "distance_error_bound_check");
  const auto lambda = op.lambda();
  const std::vector<double> spectrum(lambda.begin(), lambda.end());
  const auto q = check_qualification(phi, f, 0.5, alpha_grid, spectrum);
  if (!std::isfinite(q.a_hat) || (a_max && q.a_hat > *a_max)) {
    throw Error(Errc::precondition_violated, "qualification with mu = 1/2 fails for this filter and phi");
  }

  DistanceBoundReport rep;
  rep.a_hat = q.a_hat;
  const auto ph = phi_at_modes(op, phi);
  for (std::size_t s = 0; s < xi_samples.size(); ++s) {
    const auto& xi = xi_samples[s];
    require_same_size(op, xi, "distance_error_bound_check");
    CompensatedSum res;
    for (std::size_t i = 0; i < op.size(); ++i) {
      const double t = xdag[i] - ph[i] * xi[i];
      res += t * t;
    }
    const double dist = std::sqrt(res.value());
    const double xi_norm = xi.norm();
    for (double a : alpha_grid) {
      const double lhs = std::sqrt(error_exact(op, xdag, f, a));
      const double rhs = dist + q.a_hat * phi(a) * xi_norm;
      ++rep.pairs_checked;
      const double ratio = rhs > 0.0 ? lhs / rhs : (lhs > 0.0 ? kInf : 0.0);
      if (ratio > rep.max_ratio) {
        rep.max_ratio = ratio;
        rep.worst_alpha = a;
        rep.worst_sample = s;
      }
      if (lhs > rhs * (1.0 + 1e-12) + 1e-300) ++rep.violations;
    }
  }
  return rep;
}

}  // namespace specreg
