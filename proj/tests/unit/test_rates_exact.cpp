#include <cmath>

#include "specreg/numeric.hpp"
#include "specreg/rates_exact.hpp"
#include "support.hpp"

using namespace specreg;

namespace {

ErrorCurve synthetic(const std::vector<double>& alphas, double (*fn)(double)) {
  ErrorCurve c;
  for (auto it = alphas.rbegin(); it != alphas.rend(); ++it) {
    c.alpha.push_back(*it);
    c.err_sq.push_back(fn(*it));
  }
  return c;
}

std::vector<FilterFamily> valid_families() {
  return {FilterFamily::tikhonov(), FilterFamily::iterated_tikhonov(2), FilterFamily::landweber()};
}

}  // namespace

TEST_CASE("exact error values") {
  const auto t = FilterFamily::tikhonov();
  CHECK(error_exact(SpectralOperator({1.0}), SpectralVector({1.0}), t, 1.0) == 0.25);
  const SpectralOperator op({1.0, 0.5});
  CHECK(error_exact(op, SpectralVector({1.0, 2.0}), t, 0.5) == doctest::Approx(17.0 / 9.0).epsilon(1e-15));
  const SpectralOperator small({1.0, std::sqrt(1e-3)});
  CHECK(error_exact(small, SpectralVector({1.0, 1.0}), t, 1e-12) <= 1e-6);
  CHECK_ERRC(error_exact(op, SpectralVector({1.0, 2.0}), t, 0.0), Errc::invalid_argument);
  CHECK_ERRC(error_exact(op, SpectralVector({1.0}), t, 0.1), Errc::length_mismatch);
}

TEST_CASE("exact error against a long double reference") {
  const SpectralOperator op(testing::random_decreasing(500, 31, 1e-9));
  const auto x = testing::random_normal(op.size(), 32);
  for (double a : {1e-10, 1e-5, 1e-2, 3.0}) {
    long double ref = 0.0L;
    for (std::size_t i = 0; i < x.size(); ++i) ref += testing::tikhonov_rt(a, op.lambda()[i]) * x[i] * x[i];
    CHECK(error_exact(op, SpectralVector(x), FilterFamily::tikhonov(), a) ==
          doctest::Approx(double(ref)).epsilon(1e-13));
  }
}

TEST_CASE("error curve properties") {
  const auto op = make_operator({DecayKind::polynomial, 1.0, 800});
  const auto alphas = log_grid(1e-8, 1.0, 10);
  for (const auto& profile : {IndexFunction::holder(0.5), IndexFunction::holder(1.5), IndexFunction::logarithmic(0.5)}) {
    const auto x = make_solution_from_profile(op, {profile, 1.0});
    for (const auto& f : valid_families()) {
      const auto curve = error_curve(op, x, f, alphas);
      REQUIRE(curve.size() == alphas.size());
      for (std::size_t i = 0; i < curve.size(); ++i) {
        const double a = curve.alpha[i];
        CHECK(f.r_tilde(a, a) * spectral_function(op, x, a) <= curve.err_sq[i] * (1 + 1e-12));
        CHECK(curve.err_sq[i] <= x.norm_sq() * (1 + 1e-12));
        const double other = error_by_reconstruction(op, x, f, a);
        // the subtraction path carries an absolute error of order eps ||x|| sqrt(err)
        CHECK(std::abs(other - curve.err_sq[i]) <= 1e-10 * std::max(curve.err_sq[i], 1e-12 * x.norm_sq()));
        if (i > 0) {
          CHECK(curve.alpha[i] < curve.alpha[i - 1]);
          CHECK(curve.err_sq[i] <= curve.err_sq[i - 1] * (1 + 1e-12));
        }
      }
    }
  }
}

TEST_CASE("zero solution") {
  const auto op = make_operator({DecayKind::polynomial, 1.0, 50});
  const auto curve = error_curve(op, SpectralVector::zeros(50), FilterFamily::tikhonov(), log_grid(1e-6, 1.0, 5));
  for (double e : curve.err_sq) CHECK(e == 0.0);
  CHECK_ERRC(fit_power_rate(curve, default_fit_window(curve)), Errc::cannot_fit_log);
}

TEST_CASE("holder sandwich and determinism") {
  const auto op = make_operator({DecayKind::polynomial, 0.5, 4000});
  const double nu = 0.25;
  const auto x = make_solution_from_profile(op, {IndexFunction::holder(2 * nu), 1.0});
  const auto f = FilterFamily::tikhonov();
  const auto alphas = log_grid(1e-7, 1e-2, 10);
  const auto c1 = error_curve(op, x, f, alphas);
  const auto c2 = error_curve(op, x, f, alphas);
  CHECK(c1.err_sq == c2.err_sq);
  double upper = 0.0;
  for (std::size_t i = 0; i < c1.size(); ++i) {
    const double a = c1.alpha[i];
    CHECK((1 - 0.5) * (1 - 0.5) * spectral_function(op, x, a) <= c1.err_sq[i]);
    upper = std::max(upper, c1.err_sq[i] / std::pow(a, 2 * nu));
  }
  CHECK(upper < 10.0);
}

TEST_CASE("power fits") {
  const auto alphas = log_grid(1e-6, 1.0, 5);
  const auto c = synthetic(alphas, [](double a) { return 3.0 * std::pow(a, 0.8); });
  const auto fit = fit_power_rate(c, {1e-6, 1.0});
  CHECK(std::abs(fit.slope - 0.8) <= 1e-9);
  CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fit.points == alphas.size());
  CHECK_ERRC(fit_power_rate(c, {1e-1, 1.0}), Errc::invalid_argument);  // fewer than 10 points
  const auto w = default_fit_window(c);
  CHECK(w.alpha_min == doctest::Approx(1e-4));
  CHECK(w.alpha_max == doctest::Approx(1e-2));
}

TEST_CASE("logarithmic fits") {
  const auto alphas = log_grid(1e-12, 1e-2, 5);
  const auto exact = synthetic(alphas, [](double a) { return std::pow(std::abs(std::log(a)), -0.5); });
  const double cap = IndexFunction::logarithmic(0.5).cap();
  CHECK(fit_log_rate(exact, 0.5, {1e-12, 1e-2}, cap).spread == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_ERRC(fit_log_rate(exact, 0.5, {1e-12, 0.5}, cap), Errc::window_in_cap);

  // a mismatch of 0.2 in nu makes the spread grow with the window
  double prev = 1.0;
  for (double lo : {1e-4, 1e-6, 1e-8, 1e-10, 1e-12}) {
    const double s = fit_log_rate(exact, 0.7, {lo, 1e-2}, cap).spread;
    CHECK(s > prev);
    prev = s;
  }
}
