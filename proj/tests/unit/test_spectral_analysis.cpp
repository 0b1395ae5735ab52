#include <cmath>

#include "specreg/index_function.hpp"
#include "specreg/numeric.hpp"
#include "specreg/spectral_analysis.hpp"
#include "support.hpp"

using namespace specreg;

TEST_CASE("index functions") {
  SUBCASE("holder is multiplicative") {
    for (double q : {0.25, 1.0, 2.5}) {
      const auto phi = IndexFunction::holder(q);
      for (double a : {1e-6, 0.3, 4.0}) {
        for (double g : {0.1, 2.0, 17.0}) {
          CHECK(std::abs(phi(g * a) - std::pow(g, q) * phi(a)) <= 1e-12 * phi(g * a));
        }
      }
    }
  }
  SUBCASE("logarithmic is concave on its branch") {
    const auto phi = IndexFunction::logarithmic(0.5);
    for (double a : log_grid(1e-12, 0.5 * phi.cap(), 5)) {
      const double h = 1e-3 * a;
      const double d2 = (phi(a + h) - 2.0 * phi(a) + phi(a - h)) / (h * h);
      CHECK(d2 <= 1e-9);
    }
    CHECK(phi(0.9) == phi(phi.cap()));
    CHECK(phi(1e-10) == doctest::Approx(std::pow(std::log(1e10), -0.5)).epsilon(1e-14));
  }
  SUBCASE("parsing") {
    CHECK(IndexFunction::parse("holder:2").exponent() == 2.0);
    CHECK(IndexFunction::parse("log:0.5").kind() == IndexFunction::Kind::logarithmic);
    CHECK(IndexFunction::parse("log:0.5:0.1").cap() == 0.1);
    CHECK_ERRC(IndexFunction::parse("holder:"), Errc::parse_error);
    CHECK_ERRC(IndexFunction::parse("power:2"), Errc::unknown_name);
    CHECK_ERRC(IndexFunction::holder(-1.0), Errc::invalid_argument);
  }
}

TEST_CASE("qualification constants") {
  const auto tik = FilterFamily::tikhonov();
  const auto grid = log_grid(1e-8, 1e2, 20);
  SUBCASE("tikhonov with holder(2 nu) at mu = nu has A = 1") {
    for (double nu : {0.25, 0.5, 0.75}) {
      const auto rep = check_qualification(IndexFunction::holder(2.0 * nu), tik, nu, grid, grid);
      CHECK(rep.a_hat <= 1.0 + 1e-9);
      CHECK(rep.a_hat_above_alpha >= rep.a_hat_below_alpha);
    }
  }
  SUBCASE("tikhonov with holder(q), q < 2 mu, matches the calculus maximum") {
    // max_t t^q / (1 + t)^(2 mu) = q^q (2 mu - q)^(2 mu - q) / (2 mu)^(2 mu)
    const double q = 0.5, mu = 0.5;
    const double exact = std::pow(q, q) * std::pow(2 * mu - q, 2 * mu - q) / std::pow(2 * mu, 2 * mu);
    const auto fine = log_grid(1e-4, 1e4, 200);
    const auto rep = check_qualification(IndexFunction::holder(q), tik, mu, fine, fine);
    CHECK(rep.a_hat <= exact * (1 + 1e-12));
    CHECK(rep.a_hat >= exact * (1 - 1e-4));
  }
  SUBCASE("tikhonov with logarithmic phi") {
    const double nu = 0.5, mu = 0.75;
    const auto phi = IndexFunction::logarithmic_qualification(nu, mu);
    const auto rep = check_qualification(phi, tik, mu, log_grid(1e-10, 0.1, 20), log_grid(1e-14, 10.0, 20));
    CHECK(rep.a_hat <= 1.0 + 1e-6);
  }
  SUBCASE("constant phi gives sup r~^mu") {
    const auto flat = IndexFunction::tabulated({1e-9, 1e3}, {1.0, 1.0});
    const auto rep = check_qualification(flat, FilterFamily::landweber(), 0.5, log_grid(1e-3, 1.0, 10),
                                         log_grid(1e-6, 1.0, 10));
    CHECK(rep.a_hat <= 1.0);
  }
  SUBCASE("declared constant") {
    const auto rep = check_qualification(IndexFunction::holder(1.0), tik, 0.5, grid, grid, 1.0);
    CHECK(rep.within_declared);
  }
  CHECK_ERRC(check_qualification(IndexFunction::holder(1.0), tik, 1.0, grid, grid), Errc::invalid_argument);
  CHECK_ERRC(check_qualification(IndexFunction::holder(1.0), tik, 0.0, grid, grid), Errc::invalid_argument);
}

TEST_CASE("sub-homogeneity") {
  const auto gammas = log_grid(1e-2, 1e2, 10);
  const auto alphas = log_grid(1e-10, 1.0, 10);
  SUBCASE("holder(1) gives g(gamma) = gamma") {
    const auto rep = check_subhomogeneity(IndexFunction::holder(1.0), gammas, alphas);
    for (const auto& e : rep.g_table) CHECK(std::abs(e.g - e.gamma) <= 1e-12 * e.gamma);
    REQUIRE(rep.quad_bound_c);
    CHECK(*rep.quad_bound_c <= 2.0 + 1e-12);  // 4 gamma / (1 + gamma^2) <= 2
  }
  SUBCASE("logarithmic gives g(gamma) <= max(1, gamma)") {
    const auto rep = check_subhomogeneity(IndexFunction::logarithmic(0.5), gammas, alphas);
    for (const auto& e : rep.g_table) CHECK(e.g <= std::max(1.0, e.gamma) * (1 + 1e-12));
  }
  SUBCASE("g(1) = 1") {
    const std::vector<double> one{1.0};
    for (const auto& phi : {IndexFunction::holder(0.7), IndexFunction::logarithmic(1.0)}) {
      CHECK(check_subhomogeneity(phi, one, alphas).g_table.front().g == 1.0);
    }
  }
  SUBCASE("inverting the table") {
    const auto rep = check_subhomogeneity(IndexFunction::holder(1.0), log_grid(0.1, 10.0, 50), alphas);
    CHECK(invert_g_table(rep, 3.0) == doctest::Approx(3.0).epsilon(1e-3));
    CHECK(invert_g_table(rep, 0.01) == doctest::Approx(0.1));
    CHECK_ERRC(invert_g_table(rep, 1e3), Errc::out_of_range);
  }
}

TEST_CASE("ratio conditions for tikhonov") {
  const auto grid = log_grid(1e-6, 1e2, 6);
  const auto gammas = log_grid(1e-3, 1e3, 6);
  for (double nu : {0.25, 0.5}) {
    const auto rep = check_ratio_conditions(FilterFamily::tikhonov(), IndexFunction::holder(2.0 * nu), grid, gammas);
    REQUIRE(rep.c_upper);
    REQUIRE(rep.c_lower);
    REQUIRE(rep.quad_bound_c);
    CHECK(*rep.quad_bound_c <= 4.0 + 1e-12);
    CHECK(*rep.c_upper <= 4.0 + 1e-12);
    CHECK(*rep.c_lower >= 0.25 - 1e-12);
    // alpha = beta triples give ratio 1
    CHECK(*rep.c_upper >= 1.0);
    CHECK(*rep.c_lower <= 1.0);
    CHECK(rep.triples_checked > 0);
  }
}
