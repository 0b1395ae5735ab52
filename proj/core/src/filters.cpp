#include "specreg/filters.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "specreg/error.hpp"

namespace specreg {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string number(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

// (alpha / (alpha + lambda))^m computed without cancellation.
double tikhonov_ratio_pow(double alpha, double lambda, int m) {
  return std::pow(alpha / (alpha + lambda), m);
}

}  // namespace

FilterFamily FilterFamily::tikhonov() {
  FilterFamily f;
  f.kind_ = FilterKind::tikhonov;
  f.lambda_max_ = kInf;
  f.rho_ = 0.5;
  f.rho_tilde_ = 0.25 + 1e-6;
  f.name_ = "tikhonov";
  return f;
}

FilterFamily FilterFamily::iterated_tikhonov(int m) {
  if (m < 2) throw Error(Errc::invalid_argument, "iterated tikhonov needs m >= 2");
  FilterFamily f;
  f.kind_ = FilterKind::iterated_tikhonov;
  f.order_ = m;
  f.lambda_max_ = kInf;
  f.rho_tilde_ = std::pow(0.5, 2 * m) + 1e-6;
  f.name_ = "itik:" + std::to_string(m);
  return f;
}

FilterFamily FilterFamily::landweber() {
  FilterFamily f;
  f.kind_ = FilterKind::landweber;
  f.lambda_max_ = 1.0;
  f.name_ = "landweber";
  return f;
}

FilterFamily FilterFamily::cutoff(double c) {
  if (!(c > 0.0) || !std::isfinite(c)) throw Error(Errc::invalid_argument, "cutoff threshold must be positive");
  FilterFamily f;
  f.kind_ = FilterKind::cutoff;
  f.threshold_ = c;
  f.lambda_max_ = kInf;
  f.name_ = "cutoff:" + number(c);
  return f;
}

double FilterFamily::landweber_iterations(double alpha) { return std::ceil(1.0 / alpha); }

void FilterFamily::check_args(double alpha, double lambda) const {
  if (!(alpha > 0.0)) throw Error(Errc::invalid_argument, name_ + ": alpha must be positive");
  if (!(lambda >= 0.0)) throw Error(Errc::invalid_argument, name_ + ": lambda must be non-negative");
  if (lambda > lambda_max_) {
    throw Error(Errc::out_of_range, name_ + " evaluated at lambda = " + number(lambda) + " > " + number(lambda_max_));
  }
}

double FilterFamily::r(double alpha, double lambda) const {
  check_args(alpha, lambda);
  switch (kind_) {
    case FilterKind::tikhonov:
      return 1.0 / (alpha + lambda);
    case FilterKind::iterated_tikhonov: {
      if (lambda == 0.0) return order_ / alpha;
      // 1 - (alpha/(alpha+lambda))^m = -expm1(-m log1p(lambda/alpha))
      return -std::expm1(-order_ * std::log1p(lambda / alpha)) / lambda;
    }
    case FilterKind::landweber: {
      const double k = landweber_iterations(alpha);
      if (lambda == 0.0) return k;
      if (lambda == 1.0) return 1.0;
      return -std::expm1(k * std::log1p(-lambda)) / lambda;
    }
    case FilterKind::cutoff:
      return (lambda > 0.0 && lambda >= threshold_ * alpha) ? 1.0 / lambda : 0.0;
  }
  return 0.0;
}

double FilterFamily::r_tilde(double alpha, double lambda) const {
  check_args(alpha, lambda);
  switch (kind_) {
    case FilterKind::tikhonov:
      return tikhonov_ratio_pow(alpha, lambda, 2);
    case FilterKind::iterated_tikhonov:
      return tikhonov_ratio_pow(alpha, lambda, 2 * order_);
    case FilterKind::landweber: {
      if (lambda == 1.0) return 0.0;
      return std::exp(2.0 * landweber_iterations(alpha) * std::log1p(-lambda));
    }
    case FilterKind::cutoff:
      return (lambda > 0.0 && lambda >= threshold_ * alpha) ? 0.0 : 1.0;
  }
  return 1.0;
}

FilterFamily builtin_family(std::string_view name) {
  if (name == "tikhonov") return FilterFamily::tikhonov();
  if (name == "landweber") return FilterFamily::landweber();
  const auto colon = name.find(':');
  if (colon != std::string_view::npos) {
    const std::string head(name.substr(0, colon));
    const std::string arg(name.substr(colon + 1));
    std::size_t used = 0;
    try {
      if (head == "itik") {
        const int m = std::stoi(arg, &used);
        if (used == arg.size()) return FilterFamily::iterated_tikhonov(m);
      } else if (head == "cutoff") {
        const double c = std::stod(arg, &used);
        if (used == arg.size()) return FilterFamily::cutoff(c);
      }
    } catch (const std::logic_error&) {
      // fall through to unknown-name
    }
  }
  throw Error(Errc::unknown_name, "unknown filter family '" + std::string(name) + "'");
}

GeneratorReport validate_generator(const FilterFamily& f, std::span<const double> alpha_grid,
                                   std::span<const double> lambda_grid, const ValidationOptions& options) {
  std::vector<double> alphas(alpha_grid.begin(), alpha_grid.end());
  std::vector<double> lambdas;
  for (double l : lambda_grid) {
    if (l > 0.0 && l <= f.lambda_max()) lambdas.push_back(l);
  }
  std::sort(alphas.begin(), alphas.end());
  std::sort(lambdas.begin(), lambdas.end());
  alphas.erase(std::remove_if(alphas.begin(), alphas.end(), [](double a) { return !(a > 0.0); }), alphas.end());
  if (alphas.empty() || lambdas.empty()) {
    throw Error(Errc::invalid_argument, "validate_generator needs non-empty positive grids inside the domain");
  }

  GeneratorReport rep;
  rep.family = f.name();
  rep.region = {alphas.front(), alphas.back(), lambdas.front(), lambdas.back(), alphas.size(), lambdas.size()};

  const std::size_t na = alphas.size(), nl = lambdas.size();
  std::vector<double> rt(na * nl);
  auto at = [&](std::size_t ia, std::size_t il) -> double& { return rt[ia * nl + il]; };

  // (i) r <= min{1/lambda, rho/sqrt(alpha lambda)}
  double worst_excess = -kInf;
  Witness excess_witness;
  rep.rho_hat = -kInf;
  for (std::size_t ia = 0; ia < na; ++ia) {
    for (std::size_t il = 0; il < nl; ++il) {
      const double a = alphas[ia], l = lambdas[il];
      const double rv = f.r(a, l);
      at(ia, il) = f.r_tilde(a, l);
      const double excess = l * rv - 1.0;
      if (excess > worst_excess) {
        worst_excess = excess;
        excess_witness = {a, l, l * rv, std::nullopt};
      }
      const double rho_local = rv * std::sqrt(a * l);
      if (rho_local > rep.rho_hat) {
        rep.rho_hat = rho_local;
        rep.rho_witness = {a, l, rho_local, std::nullopt};
      }
    }
  }
  if (worst_excess > options.monotone_tol) {
    rep.cond_i = {false, excess_witness, "lambda r(alpha, lambda) exceeds 1"};
  } else if (!(rep.rho_hat < 1.0)) {
    rep.cond_i = {false, rep.rho_witness, "r sqrt(alpha lambda) reaches 1"};
  } else {
    rep.cond_i = {true, rep.rho_witness, "max r sqrt(alpha lambda) = rho_hat"};
  }

  // (ii) lambda -> r~ non-increasing for each alpha
  double worst_rise = 0.0;
  std::optional<Witness> rise_witness;
  for (std::size_t ia = 0; ia < na; ++ia) {
    for (std::size_t il = 0; il + 1 < nl; ++il) {
      const double rise = at(ia, il + 1) - at(ia, il);
      if (rise > worst_rise) {
        worst_rise = rise;
        rise_witness = Witness{alphas[ia], lambdas[il + 1], rise, lambdas[il]};
      }
    }
  }
  rep.cond_ii.pass = !(worst_rise > options.monotone_tol);
  rep.cond_ii.witness = rise_witness;
  rep.cond_ii.reason = rep.cond_ii.pass ? "r~ non-increasing in lambda" : "r~ increases in lambda";

  // (iii) alpha -> r~ non-decreasing and without jumps for each lambda
  double worst_drop = 0.0, worst_jump = 0.0;
  std::optional<Witness> drop_witness, jump_witness;
  for (std::size_t il = 0; il < nl; ++il) {
    for (std::size_t ia = 0; ia + 1 < na; ++ia) {
      const double lo = at(ia, il), hi = at(ia + 1, il);
      const double drop = lo - hi;
      if (drop > worst_drop) {
        worst_drop = drop;
        drop_witness = Witness{alphas[ia + 1], lambdas[il], drop, alphas[ia]};
      }
      const double scale = std::max(lo, hi);
      if (scale >= options.jump_floor) {
        const double jump = std::abs(hi - lo) / scale;
        if (jump > worst_jump) {
          worst_jump = jump;
          jump_witness = Witness{alphas[ia + 1], lambdas[il], jump, alphas[ia]};
        }
      }
    }
  }
  if (worst_drop > options.monotone_tol) {
    rep.cond_iii = {false, drop_witness, "r~ decreases in alpha"};
  } else if (worst_jump > options.jump_tol) {
    rep.cond_iii = {false, jump_witness, "relative jump of r~ between adjacent alpha exceeds tolerance"};
  } else {
    rep.cond_iii = {true, jump_witness, "r~ non-decreasing and continuous in alpha"};
  }

  // (iv) sup_alpha r~_alpha(alpha) < 1
  rep.rho_tilde_hat = -kInf;
  for (double a : alphas) {
    if (a > f.lambda_max()) continue;
    const double v = f.r_tilde(a, a);
    if (v > rep.rho_tilde_hat) {
      rep.rho_tilde_hat = v;
      rep.rho_tilde_witness = {a, a, v, std::nullopt};
    }
  }
  if (rep.rho_tilde_hat == -kInf) {
    rep.cond_iv = {false, std::nullopt, "no alpha inside the family's lambda domain"};
  } else if (rep.rho_tilde_hat <= 1.0 - options.limit_margin) {
    rep.cond_iv = {true, rep.rho_tilde_witness, "max r~_alpha(alpha) = rho_tilde_hat"};
  } else {
    rep.cond_iv = {false, rep.rho_tilde_witness, "r~_alpha(alpha) reaches 1"};
  }
  return rep;
}

SpectralVector regularize(const SpectralOperator& op, const FilterFamily& f, double alpha, const SpectralVector& y) {
  if (!(alpha > 0.0)) throw Error(Errc::invalid_argument, "regularize: alpha must be positive");
  require_same_size(op, y, "regularize");
  const auto sigma = op.sigma();
  const auto lambda = op.lambda();
  std::vector<double> x(y.size());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = f.r(alpha, lambda[i]) * sigma[i] * y[i];
  return SpectralVector(std::move(x));
}

}  // namespace specreg
