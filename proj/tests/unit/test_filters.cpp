#include <cmath>

#include "specreg/filters.hpp"
#include "specreg/numeric.hpp"
#include "support.hpp"

using namespace specreg;

namespace {

std::vector<FilterFamily> valid_families() {
  return {FilterFamily::tikhonov(), FilterFamily::iterated_tikhonov(2), FilterFamily::iterated_tikhonov(3),
          FilterFamily::landweber()};
}

}  // namespace

TEST_CASE("tikhonov closed forms") {
  const auto f = FilterFamily::tikhonov();
  CHECK(f.r(1.0, 1.0) == 0.5);
  CHECK(f.r_tilde(1.0, 1.0) == 0.25);
  for (double a : log_grid(1e-8, 1e2, 20)) CHECK(f.r_tilde(a, a) == 0.25);
  for (double a : {1e-6, 0.3, 7.0}) {
    for (double l : {1e-7, 0.01, 2.0, 50.0}) {
      CHECK(f.r_tilde(a, l) == doctest::Approx(double(testing::tikhonov_rt(a, l))).epsilon(1e-13));
    }
  }
}

TEST_CASE("iterated tikhonov against the iteration") {
  const auto f2 = FilterFamily::iterated_tikhonov(2);
  CHECK(f2.r_tilde(0.3, 0.3) == doctest::Approx(1.0 / 16.0).epsilon(1e-15));
  for (int m : {2, 3, 5}) {
    const auto f = FilterFamily::iterated_tikhonov(m);
    for (double a : {1e-4, 0.1, 2.0}) {
      for (double l : {1e-5, 0.05, 1.0, 30.0}) {
        CHECK(f.r(a, l) == doctest::Approx(double(testing::itik_r(m, a, l))).epsilon(1e-12));
      }
    }
  }
  CHECK_ERRC(FilterFamily::iterated_tikhonov(1), Errc::invalid_argument);
}

TEST_CASE("landweber against the Neumann series") {
  const auto f = FilterFamily::landweber();
  CHECK(FilterFamily::landweber_iterations(0.1) == 10.0);
  CHECK(f.r_tilde(0.1, 0.1) == doctest::Approx(std::pow(0.9, 20)).epsilon(1e-13));
  CHECK(f.r_tilde(0.1, 0.1) == doctest::Approx(0.1216).epsilon(1e-3));
  for (double a : {0.5, 0.1, 0.013}) {
    const int k = static_cast<int>(FilterFamily::landweber_iterations(a));
    for (double l : {1e-4, 0.02, 0.5, 1.0}) {
      CHECK(f.r(a, l) == doctest::Approx(double(testing::landweber_r(k, l))).epsilon(1e-11));
    }
  }
  CHECK_ERRC(f.r(0.1, 1.5), Errc::out_of_range);
  CHECK_ERRC(f.r_tilde(0.1, 1.0 + 1e-9), Errc::out_of_range);
}

TEST_CASE("cutoff and argument checks") {
  const auto c = FilterFamily::cutoff(2.0);
  CHECK(c.r(1.0, 2.0) == 0.5);
  CHECK(c.r(1.0, 1.9) == 0.0);
  CHECK(c.r_tilde(1.0, 1.0) == 1.0);
  CHECK_ERRC(FilterFamily::tikhonov().r(0.0, 1.0), Errc::invalid_argument);
  CHECK_ERRC(FilterFamily::tikhonov().r_tilde(-1.0, 1.0), Errc::invalid_argument);
}

TEST_CASE("builtin family names") {
  CHECK(builtin_family("tikhonov").kind() == FilterKind::tikhonov);
  CHECK(builtin_family("itik:3").kind() == FilterKind::iterated_tikhonov);
  CHECK(builtin_family("landweber").kind() == FilterKind::landweber);
  CHECK(builtin_family("cutoff:2").kind() == FilterKind::cutoff);
  CHECK_ERRC(builtin_family("showalter"), Errc::unknown_name);
  CHECK_ERRC(builtin_family("itik:x"), Errc::unknown_name);
  CHECK_ERRC(builtin_family(""), Errc::unknown_name);
}

TEST_CASE("error function stays in [0,1] and matches its definition") {
  auto fams = valid_families();
  fams.push_back(FilterFamily::cutoff(2.0));
  const auto grid = log_grid(1e-8, 1e2, 7);
  for (const auto& f : fams) {
    for (double a : grid) {
      for (double l : grid) {
        if (l > f.lambda_max()) continue;
        const double rt = f.r_tilde(a, l);
        const double s = 1.0 - l * f.r(a, l);
        CHECK(rt >= 0.0);
        CHECK(rt <= 1.0);
        CHECK(std::abs(rt - s * s) <= 1e-12);
      }
    }
  }
}

TEST_CASE("generator validation") {
  const auto grid = log_grid(1e-8, 1e2, 20);
  SUBCASE("tikhonov passes") {
    const auto rep = validate_generator(FilterFamily::tikhonov(), grid, grid);
    CHECK(rep.all_pass());
    CHECK(rep.rho_hat <= 0.5 + 1e-9);
    CHECK(rep.rho_tilde_hat == 0.25);
  }
  SUBCASE("cutoff fails (iii) and (iv) with witnesses") {
    const auto rep = validate_generator(FilterFamily::cutoff(2.0), grid, grid);
    CHECK(rep.cond_i.pass);
    CHECK(rep.cond_ii.pass);
    CHECK_FALSE(rep.cond_iii.pass);
    REQUIRE(rep.cond_iii.witness);
    CHECK(rep.cond_iii.witness->neighbor.has_value());
    CHECK_FALSE(rep.cond_iv.pass);
    REQUIRE(rep.cond_iv.witness);
    CHECK(rep.cond_iv.witness->value == 1.0);
  }
  SUBCASE("landweber on (0,1]") {
    const auto lam = log_grid(1e-6, 1.0, 20);
    const auto rep = validate_generator(FilterFamily::landweber(), log_grid(1e-3, 0.1, 20), lam);
    CHECK(rep.cond_ii.pass);
    CHECK(rep.cond_i.pass);
    CHECK(rep.rho_hat < 0.7);
    CHECK(rep.region.lambda_max <= 1.0);
    // two iterations (alpha near 0.9): r sqrt(alpha lambda) = (2 - lambda) sqrt(alpha lambda) exceeds 1
    const auto coarse = validate_generator(FilterFamily::landweber(), log_grid(1e-3, 1.0, 20), lam);
    CHECK_FALSE(coarse.cond_i.pass);
    REQUIRE(coarse.cond_i.witness);
    const auto& w = *coarse.cond_i.witness;
    CHECK(w.value == doctest::Approx((2.0 - w.lambda) * std::sqrt(w.alpha * w.lambda)));
  }
  SUBCASE("iterated tikhonov passes") {
    const auto rep = validate_generator(FilterFamily::iterated_tikhonov(2), grid, grid);
    CHECK(rep.all_pass());
    CHECK(rep.rho_tilde_hat == doctest::Approx(1.0 / 16.0));
  }
}

TEST_CASE("regularize") {
  const auto t = FilterFamily::tikhonov();
  CHECK(regularize(SpectralOperator({1.0}), t, 1.0, SpectralVector({1.0}))[0] == 0.5);
  const SpectralOperator one({1.0});
  const auto y = apply_forward(one, SpectralVector({1.0}));
  CHECK(regularize(one, t, 1e-14, y)[0] == doctest::Approx(1.0).epsilon(1e-13));
  const auto x = regularize(SpectralOperator({1.0, 0.1}), FilterFamily::cutoff(1.0), 0.5, SpectralVector({1.0, 0.1}));
  CHECK(x[0] == 1.0);
  CHECK(x[1] == 0.0);
  CHECK_ERRC(regularize(one, t, 0.0, y), Errc::invalid_argument);
  CHECK_ERRC(regularize(one, t, 1.0, SpectralVector({1.0, 2.0})), Errc::length_mismatch);
}

TEST_CASE("regularize is linear in the data") {
  const SpectralOperator op(testing::random_decreasing(80, 11));
  const auto a = testing::random_normal(op.size(), 12), b = testing::random_normal(op.size(), 13);
  std::vector<double> comb(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) comb[i] = 2.0 * a[i] - 0.5 * b[i];
  for (const auto& f : valid_families()) {
    const auto xa = regularize(op, f, 0.01, SpectralVector(a));
    const auto xb = regularize(op, f, 0.01, SpectralVector(b));
    const auto xc = regularize(op, f, 0.01, SpectralVector(comb));
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(std::abs(xc[i] - (2.0 * xa[i] - 0.5 * xb[i])) <= 1e-12 * (1.0 + std::abs(xc[i])));
    }
  }
}

TEST_CASE("noise amplification is bounded by rho^2 delta^2 / alpha") {
  const SpectralOperator op(testing::random_decreasing(120, 21, 1e-6));
  std::vector<double> lam(op.lambda().begin(), op.lambda().end());
  const double delta = 1e-3;
  for (const auto& f : valid_families()) {
    const auto alphas = log_grid(1e-5, 1.0, 5);
    const auto rep = validate_generator(f, alphas, lam);
    for (std::uint64_t s = 0; s < 20; ++s) {
      auto noise = testing::random_normal(op.size(), 100 + s);
      double n = 0.0;
      for (double v : noise) n += v * v;
      for (double& v : noise) v *= delta / std::sqrt(n);
      for (double a : alphas) {
        const auto dx = regularize(op, f, a, SpectralVector(noise));
        CHECK(dx.norm_sq() <= rep.rho_hat * rep.rho_hat * delta * delta / a * (1.0 + 1e-12));
      }
    }
  }
}
