#include <cmath>

#include "specreg/numeric.hpp"
#include "specreg/rates_exact.hpp"
#include "specreg/rates_noisy.hpp"
#include "support.hpp"

using namespace specreg;

TEST_CASE("alpha_delta") {
  const auto t = FilterFamily::tikhonov();
  SUBCASE("single mode") {
    // A(alpha) = alpha^3 / (1 + alpha)^2 equals 1/4 at alpha = 1
    const SpectralOperator op({1.0});
    CHECK(solve_alpha_delta(op, SpectralVector({1.0}), t, 0.5) == doctest::Approx(1.0).epsilon(1e-9));
  }
  SUBCASE("monotone in delta, A increasing") {
    const auto op = make_operator({DecayKind::polynomial, 1.0, 500});
    const auto x = make_solution_from_profile(op, {IndexFunction::holder(1.0), 1.0});
    double prev = 0.0;
    for (double d : testing::geometric(1e-5, 1e-2, 8)) {
      const double a = solve_alpha_delta(op, x, t, d);
      CHECK(a > prev);
      CHECK(a * error_exact(op, x, t, a) == doctest::Approx(d * d).epsilon(1e-8));
      prev = a;
    }
    double prev_a = 0.0;
    for (double a : log_grid(1e-10, 1e2, 4)) {
      const double v = a * error_exact(op, x, t, a);
      CHECK(v > prev_a);
      prev_a = v;
    }
  }
  SUBCASE("holder source with nu = 1/2") {
    const auto op = make_operator({DecayKind::polynomial, 1.0, 4000});
    const auto x = make_solution_from_profile(op, {IndexFunction::holder(1.0), 1.0});
    for (double d : testing::geometric(1e-4, 1e-2, 5)) {
      const double a = solve_alpha_delta(op, x, t, d);
      CHECK(a >= 0.5 * d);
      CHECK(a <= 2.0 * d);
    }
  }
  SUBCASE("failures") {
    const SpectralOperator op({1.0, 0.5, 0.1, 0.01});
    const SpectralVector x({1.0, 0.5, 0.0, 0.0});
    CHECK_ERRC(solve_alpha_delta(op, x, FilterFamily::cutoff(1.0), 1e-3), Errc::trivial_case);
    CHECK_ERRC(solve_alpha_delta(SpectralOperator({1.0}), SpectralVector({1.0}), t, 1e200), Errc::bracket_error);
    CHECK_ERRC(solve_alpha_delta(op, x, t, 0.0), Errc::invalid_argument);
  }
}

TEST_CASE("adversarial data") {
  const auto t = FilterFamily::tikhonov();
  const SpectralOperator op({1.0});
  SUBCASE("noise has norm delta") {
    const auto adv = build_adversarial(op, SpectralVector({1.0}), t, 0.1, 0.25, 1.0);
    CHECK(adv.band.size() == 1);
    CHECK(!adv.fallback_used);
    CHECK(std::abs(adv.y_tilde[0] - 1.0) == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(adv.a_delta == 1.0);
  }
  SUBCASE("vanishing residual falls back to a unit vector") {
    const auto adv = build_adversarial(op, SpectralVector({0.0}), t, 0.1, 0.25, 1.0);
    CHECK(adv.fallback_used);
    CHECK(adv.y_tilde[0] == doctest::Approx(0.1));
  }
  SUBCASE("empty band") {
    CHECK_ERRC(build_adversarial(SpectralOperator({1.0, 0.1}), SpectralVector({1.0, 1.0}), t, 0.1, 0.25, 0.1),
               Errc::alpha_not_in_spectrum);
  }
  SUBCASE("random instances") {
    const SpectralOperator big(testing::random_decreasing(300, 5, 1e-8));
    const SpectralVector x(testing::random_normal(big.size(), 6));
    const auto adv = build_adversarial(big, x, t, 1e-3, 0.25);
    const auto y = apply_forward(big, x);
    double n2 = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) n2 += std::pow(adv.y_tilde[i] - y[i], 2);
    CHECK(std::sqrt(n2) == doctest::Approx(1e-3).epsilon(1e-12));
    for (std::size_t i : adv.band) {
      CHECK(big.lambda()[i] >= adv.a_delta);
      CHECK(big.lambda()[i] <= 2.0 * adv.alpha_delta);
    }
  }
}

TEST_CASE("worst case bracket") {
  const auto t = FilterFamily::tikhonov();
  const FilterConstants tik{0.5, 0.25};
  const auto grid = log_grid(1e-8, 1e2, 20);
  SUBCASE("constants") {
    // delta = 1/2 puts alpha_delta = 1 on the single eigenvalue
    const auto rep = worst_case_bracket(SpectralOperator({1.0}), SpectralVector({1.0}), t, 0.5, grid, tik);
    CHECK(rep.c1 == 2.25);
    CHECK(rep.c0 == 0.125);
    REQUIRE(rep.lower);
    CHECK(rep.adversarial_value >= *rep.lower);
    CHECK(rep.adversarial_value <= rep.upper);
    CHECK(!rep.trivial);
  }
  SUBCASE("trivial case") {
    const SpectralOperator op({1.0, 0.5, 0.1, 0.01});
    const SpectralVector x({1.0, 0.5, 0.0, 0.0});
    const auto f = FilterFamily::cutoff(1.0);
    const double d = 1e-3;
    const auto rep = worst_case_bracket(op, x, f, d, grid, {1.0, 0.0});
    CHECK(rep.trivial);
    REQUIRE(rep.epsilon);
    CHECK(error_exact(op, x, f, *rep.epsilon) == 0.0);
    CHECK(rep.upper == doctest::Approx(d * d / *rep.epsilon).epsilon(1e-15));
    CHECK(!rep.lower);
    CHECK(rep.adversarial_value <= rep.upper);
  }
  SUBCASE("noise amplification bound") {
    const SpectralOperator op(testing::random_decreasing(200, 8, 1e-6));
    const SpectralVector x(testing::random_normal(op.size(), 9));
    const auto noise = testing::random_normal(op.size(), 10);
    const double d = 1e-2;
    double nn = 0.0;
    for (double v : noise) nn += v * v;
    std::vector<double> yt(op.size());
    const auto y = apply_forward(op, x);
    for (std::size_t i = 0; i < yt.size(); ++i) yt[i] = y[i] + d * noise[i] / std::sqrt(nn);
    for (double a : log_grid(1e-6, 1.0, 5)) {
      const double lhs = std::sqrt(error_noisy(op, x, t, a, SpectralVector(yt)));
      const double rhs = std::sqrt(error_exact(op, x, t, a)) + 0.5 * d / std::sqrt(a);
      CHECK(lhs <= rhs * (1 + 1e-12));
    }
  }
}

TEST_CASE("rate transfer") {
  SUBCASE("holder closed forms") {
    const RateTransfer one(IndexFunction::holder(1.0));
    CHECK(one.psi(1e-3) == doctest::Approx(1e-3).epsilon(1e-14));
    const RateTransfer half(IndexFunction::holder(0.5));
    CHECK(half.psi(0.01) == doctest::Approx(std::pow(0.01, 2.0 / 3.0)).epsilon(1e-14));
    for (double d : {1e-8, 1e-4, 0.3}) {
      CHECK(half.psi_by_inversion(d) == doctest::Approx(half.psi(d)).epsilon(1e-9));
    }
  }
  SUBCASE("delta = phi~(alpha) gives delta^2 / alpha") {
    const RateTransfer tr(IndexFunction::logarithmic(1.0));
    for (double a : {1e-12, 1e-6, 1e-2}) {
      const double d = tr.phi_tilde(a);
      CHECK(tr.psi(d) == doctest::Approx(d * d / a).epsilon(1e-9));
    }
  }
  SUBCASE("logarithmic fixed point") {
    const double d = 1e-6;
    const double p = solve_log_psi(0.5, d);
    CHECK(p >= std::pow(-2.0 * std::log(d), -0.5));
    CHECK(p <= std::pow(-std::log(d), -0.5));
    CHECK(std::abs(log_psi_residual(0.5, d, p)) <= 1e-10);
    CHECK(psi_of_delta(IndexFunction::logarithmic(0.5), d) == doctest::Approx(p).epsilon(1e-8));
    double prev = 0.0;
    for (double dd : testing::geometric(1e-12, 0.5, 10)) {
      const double q = solve_log_psi(0.5, dd);
      CHECK(q > prev);
      prev = q;
    }
    CHECK_ERRC(solve_log_psi(0.5, 0.7), Errc::delta_too_large);
  }
  CHECK_ERRC(RateTransfer(IndexFunction::holder(1.0)).phi_tilde_inverse(-1.0), Errc::delta_out_of_range);
}
