#include "specreg/spectral_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "specreg/error.hpp"
#include "specreg/numeric.hpp"

namespace specreg {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> sorted_positive(std::span<const double> grid, const char* what) {
  std::vector<double> v;
  for (double g : grid) {
    if (!(g > 0.0) || !std::isfinite(g)) {
      throw Error(Errc::invalid_argument, std::string(what) + " must contain positive finite values");
    }
    v.push_back(g);
  }
  if (v.empty()) throw Error(Errc::invalid_argument, std::string(what) + " is empty");
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

QualificationReport check_qualification(const IndexFunction& phi, const FilterFamily& f, double mu,
                                        std::span<const double> alpha_grid, std::span<const double> lambda_grid,
                                        std::optional<double> a_declared) {
  if (!(mu > 0.0 && mu < 1.0)) throw Error(Errc::invalid_argument, "qualification exponent mu must lie in (0,1)");
  const auto alphas = sorted_positive(alpha_grid, "alpha grid");
  std::vector<double> lambdas;
  for (double l : sorted_positive(lambda_grid, "lambda grid")) {
    if (l <= f.lambda_max()) lambdas.push_back(l);
  }
  if (lambdas.empty()) throw Error(Errc::invalid_argument, "lambda grid lies outside the family's domain");

  QualificationReport rep;
  rep.mu = mu;
  rep.a_hat = -kInf;
  rep.a_hat_below_alpha = 0.0;
  rep.a_hat_above_alpha = 0.0;
  for (double a : alphas) {
    const double pa = phi(a);
    for (double l : lambdas) {
      const double num = phi(l) * std::pow(f.r_tilde(a, l), mu);
      const double ratio = pa > 0.0 ? num / pa : (num > 0.0 ? kInf : 0.0);
      if (ratio > rep.a_hat) {
        rep.a_hat = ratio;
        rep.witness = {a, l, ratio, std::nullopt};
      }
      if (l < a) {
        rep.a_hat_below_alpha = std::max(rep.a_hat_below_alpha, ratio);
      } else {
        rep.a_hat_above_alpha = std::max(rep.a_hat_above_alpha, ratio);
      }
    }
  }
  rep.a_declared = a_declared;
  rep.within_declared = !a_declared || rep.a_hat <= *a_declared;
  return rep;
}

RatioConditionReport check_subhomogeneity(const IndexFunction& phi, std::span<const double> gamma_grid,
                                          std::span<const double> alpha_grid) {
  const auto gammas = sorted_positive(gamma_grid, "gamma grid");
  const auto alphas = sorted_positive(alpha_grid, "alpha grid");
  RatioConditionReport rep;
  double quad = 0.0;
  for (double g : gammas) {
    GEntry entry{g, -kInf, 0.0};
    for (double a : alphas) {
      const double pa = phi(a);
      if (!(pa > 0.0)) continue;
      const double ratio = phi(g * a) / pa;
      if (ratio > entry.g) {
        entry.g = ratio;
        entry.alpha_at_max = a;
      }
    }
    if (entry.g == -kInf) throw Error(Errc::division_error, "phi vanishes on the whole alpha grid");
    quad = std::max(quad, 4.0 * entry.g / (1.0 + g * g));
    rep.g_table.push_back(entry);
  }
  rep.quad_bound_c = quad;
  return rep;
}

RatioConditionReport check_ratio_conditions(const FilterFamily& f, const IndexFunction& phi,
                                            std::span<const double> grid) {
  std::vector<double> pts;
  for (double g : sorted_positive(grid, "ratio grid")) {
    if (g <= f.lambda_max()) pts.push_back(g);
  }
  const std::size_t n = pts.size();
  std::vector<double> phis(n), rt(n * n);  // rt[a * n + l] = r~_{pts[a]}(pts[l])
  for (std::size_t i = 0; i < n; ++i) phis[i] = phi(pts[i]);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t l = 0; l < n; ++l) rt[a * n + l] = f.r_tilde(pts[a], pts[l]);
  }

  RatioConditionReport rep;
  double upper = -kInf, lower = kInf;
  auto ratio_at = [&](std::size_t a, std::size_t b, std::size_t l) {
    const double ra = rt[a * n + l], rb = rt[b * n + l];
    if (rb == 0.0) return ra == 0.0 ? std::numeric_limits<double>::quiet_NaN() : kInf;
    if (!(phis[a] > 0.0)) return kInf;
    return ra / rb * phis[b] / phis[a];
  };
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a; b < n; ++b) {
      // alpha <= beta <= lambda
      for (std::size_t l = b; l < n; ++l) {
        const double v = ratio_at(a, b, l);
        if (std::isnan(v)) continue;
        ++rep.triples_checked;
        if (v > upper) {
          upper = v;
          rep.upper_witness = {pts[a], pts[b], pts[l], v};
        }
      }
      // lambda <= alpha <= beta
      for (std::size_t l = 0; l <= a; ++l) {
        const double v = ratio_at(a, b, l);
        if (std::isnan(v)) continue;
        ++rep.triples_checked;
        if (v < lower) {
          lower = v;
          rep.lower_witness = {pts[a], pts[b], pts[l], v};
        }
      }
    }
  }
  if (upper > -kInf) rep.c_upper = upper;
  if (lower < kInf) rep.c_lower = lower;
  return rep;
}

RatioConditionReport check_ratio_conditions(const FilterFamily& f, const IndexFunction& phi,
                                            std::span<const double> grid, std::span<const double> gamma_grid) {
  auto rep = check_ratio_conditions(f, phi, grid);
  auto sub = check_subhomogeneity(phi, gamma_grid, grid);
  rep.g_table = std::move(sub.g_table);
  rep.quad_bound_c = sub.quad_bound_c;
  return rep;
}

double invert_g_table(const RatioConditionReport& report, double value) {
  const auto& t = report.g_table;
  if (t.empty()) throw Error(Errc::invalid_argument, "empty g table");
  std::vector<double> gam(t.size()), run(t.size());
  double m = -kInf;
  for (std::size_t i = 0; i < t.size(); ++i) {
    gam[i] = t[i].gamma;
    m = std::max(m, t[i].g);
    run[i] = m;
  }
  if (value <= run.front()) return gam.front();
  if (value > run.back()) throw Error(Errc::out_of_range, "value above the tabulated range of g");
  auto g_at = [&](double x) {
    const auto it = std::upper_bound(gam.begin(), gam.end(), x);
    if (it == gam.begin()) return run.front();
    if (it == gam.end()) return run.back();
    const auto hi = static_cast<std::size_t>(it - gam.begin());
    const std::size_t lo = hi - 1;
    const double s = (x - gam[lo]) / (gam[hi] - gam[lo]);
    return run[lo] + s * (run[hi] - run[lo]);
  };
  return bisect_increasing(g_at, gam.front(), gam.back(), value, 1e-14 * gam.back());
}

}  // namespace specreg
