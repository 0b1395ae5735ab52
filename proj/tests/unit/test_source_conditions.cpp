#include <cmath>
#include <vector>

#include "specreg/numeric.hpp"
#include "specreg/source_conditions.hpp"
#include "support.hpp"

using namespace specreg;

namespace {

// Brackets d(R) from both sides by scanning the multiplier: the primal value at
// a feasible xi(mu) is an upper bound, the dual function a lower bound.
struct Bracket {
  long double lo = 0.0L, hi = 0.0L;
};

Bracket scan_distance(const std::vector<double>& x, const std::vector<double>& p, double radius) {
  Bracket b{0.0L, 1e300L};
  for (int k = -4000; k <= 4000; ++k) {
    const long double mu = std::pow(10.0L, k / 200.0L);
    long double xi2 = 0.0L, res2 = 0.0L, dual = -mu * radius * radius;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const long double den = (long double)p[i] * p[i] + mu;
      const long double xi = p[i] * x[i] / den;
      xi2 += xi * xi;
      res2 += std::pow(x[i] - p[i] * xi, 2);
      dual += (long double)x[i] * x[i] * mu / den;
    }
    if (xi2 <= (long double)radius * radius) b.hi = std::min(b.hi, std::sqrt(res2));
    b.lo = std::max(b.lo, std::sqrt(std::max(dual, 0.0L)));
  }
  return b;
}

}  // namespace

TEST_CASE("variational inequality constant") {
  const auto phi = IndexFunction::holder(1.0);
  SUBCASE("single mode") {
    const auto rep = vi_constant(SpectralOperator({1.0}), SpectralVector({0.7}), phi, 0.5, 4, 1);
    CHECK(rep.c_vi == doctest::Approx(0.7).epsilon(1e-14));
    CHECK(rep.c_spec == doctest::Approx(0.49).epsilon(1e-14));
    CHECK(rep.c_vi_kind == "lower-bound");
  }
  SUBCASE("zero solution") {
    const auto rep = vi_constant(make_operator({DecayKind::polynomial, 1.0, 20}), SpectralVector::zeros(20), phi,
                                 0.5, 8, 1);
    CHECK(rep.c_vi == 0.0);
    CHECK(rep.c_spec == 0.0);
  }
  SUBCASE("source elements") {
    const auto op = make_operator({DecayKind::polynomial, 1.0, 300});
    for (double nu : {0.25, 0.5, 0.75, 1.0}) {
      const SpectralVector omega(testing::random_normal(op.size(), 40));
      const auto x = make_solution_from_source(op, phi, nu, omega);
      const auto rep = vi_constant(op, x, phi, nu, 64, 3);
      CHECK(rep.c_vi <= omega.norm() * (1 + 1e-9));
      CHECK(rep.forward_holds(1e-9));
      CHECK(rep.converse_holds(1e-9));
      CHECK(rep.converse_bound.has_value() == (nu < 1.0));
      CHECK(rep.test_set.random == 64);
      CHECK(rep.test_set.total() >= 64 + op.size());
    }
  }
  SUBCASE("deterministic in the seed") {
    const auto op = make_operator({DecayKind::exponential, 0.1, 100});
    const auto x = make_solution_from_profile(op, {IndexFunction::holder(0.5), 1.0});
    CHECK(vi_constant(op, x, phi, 0.5, 32, 9).c_vi == vi_constant(op, x, phi, 0.5, 32, 9).c_vi);
  }
  SUBCASE("errors") {
    const SpectralOperator op({1.0, 0.5, 0.1});
    const SpectralVector x({1.0, 1.0, 1.0});
    CHECK_ERRC(vi_constant(op, x, IndexFunction::tabulated({0.5, 1.0}, {0.0, 1.0}), 0.5, 4, 1), Errc::division_error);
    CHECK_ERRC(vi_constant(op, x, phi, 0.0, 4, 1), Errc::invalid_argument);
    CHECK_ERRC(vi_constant(op, x, phi, 1.5, 4, 1), Errc::invalid_argument);
  }
}

TEST_CASE("truncated source witness") {
  const auto op = make_operator({DecayKind::polynomial, 1.0, 1000});
  const auto phi = IndexFunction::holder(1.0);
  const std::vector<std::size_t> dims{10, 100, 1000};
  SUBCASE("source elements stay bounded") {
    const SpectralVector omega(testing::random_normal(op.size(), 2));
    const auto w = ssc_witness(op, make_solution_from_source(op, phi, 0.5, omega), phi, 0.5, dims);
    REQUIRE(w.witness_norm_sq.size() == 3);
    for (double v : w.witness_norm_sq) CHECK(v <= omega.norm_sq() * (1 + 1e-12));
    CHECK(w.log_phi_ratio.back() == doctest::Approx(std::log(1e6)).epsilon(1e-12));
  }
  SUBCASE("elements outside the source set grow") {
    const auto x = make_solution_from_profile(op, {IndexFunction::holder(0.5), 1.0});
    const auto w = ssc_witness(op, x, phi, 0.5, dims);
    CHECK(w.witness_norm_sq[1] > w.witness_norm_sq[0]);
    CHECK(w.witness_norm_sq[2] > w.witness_norm_sq[1]);
  }
  SUBCASE("single mode") {
    const std::vector<std::size_t> one{1};
    const auto w = ssc_witness(SpectralOperator({0.5}), SpectralVector({0.3}), phi, 0.5, one);
    CHECK(w.witness_norm_sq[0] == doctest::Approx(0.09 / 0.25).epsilon(1e-14));
  }
  SUBCASE("invalid dims") {
    const std::vector<std::size_t> down{100, 10};
    const std::vector<std::size_t> big{2000};
    const auto x = SpectralVector::zeros(op.size());
    CHECK_ERRC(ssc_witness(op, x, phi, 0.5, down), Errc::invalid_argument);
    CHECK_ERRC(ssc_witness(op, x, phi, 0.5, big), Errc::invalid_argument);
  }
}

TEST_CASE("distance function") {
  const auto phi = IndexFunction::holder(1.0);
  SUBCASE("simple values") {
    const SpectralOperator op({1.0});
    const auto zero = distance_function(op, SpectralVector({2.0}), phi, 0.0);
    CHECK(zero.d == 2.0);
    CHECK(std::isinf(zero.mu));
    CHECK(distance_function(op, SpectralVector({2.0}), phi, 1.0).d == doctest::Approx(1.0).epsilon(1e-12));
    const auto rep = distance_function(op, SpectralVector({2.0}), phi, 3.0);
    CHECK(rep.d == 0.0);
    CHECK(rep.mu == 0.0);
    CHECK_ERRC(distance_function(op, SpectralVector({2.0}), phi, -1.0), Errc::invalid_argument);
  }
  SUBCASE("five modes against a multiplier scan") {
    const SpectralOperator op({1.0, 0.8, 0.5, 0.3, 0.2});
    const std::vector<double> xv{0.3, -1.0, 0.4, 0.2, -0.7};
    std::vector<double> p;
    for (double l : op.lambda()) p.push_back(phi(l));
    for (double radius : {0.1, 1.0, 5.0, 20.0}) {
      const auto res = distance_function(op, SpectralVector(xv), phi, radius);
      const auto b = scan_distance(xv, p, radius);
      CHECK(res.d >= double(b.lo) - 1e-9);
      CHECK(res.d <= double(b.hi) + 1e-9);
      CHECK(res.xi.norm() <= radius * (1 + 1e-12));
    }
  }
  SUBCASE("profile shape") {
    const auto op = make_operator({DecayKind::polynomial, 1.0, 500});
    const auto x = make_solution_from_profile(op, {IndexFunction::holder(0.5), 1.0});
    const auto prof = distance_profile(op, x, phi, log_grid(1e-2, 1e4, 5));
    CHECK(prof.non_increasing);
    CHECK(prof.convex);
    for (std::size_t i = 1; i < prof.rows.size(); ++i) {
      CHECK(prof.rows[i].d <= prof.rows[i - 1].d);
      CHECK(prof.rows[i].mu <= prof.rows[i - 1].mu);
    }
    const std::vector<double> uneven{1.0, 2.0, 10.0};
    CHECK_ERRC(distance_profile(op, x, phi, uneven), Errc::invalid_argument);
  }
  SUBCASE("decay slopes") {
    const auto op = make_operator({DecayKind::exponential, 0.05, 400});
    for (double nu : {0.25, 0.5}) {
      const auto x = make_solution_from_profile(op, {IndexFunction::holder(2.0 * nu), 1.0});
      const auto radii = log_grid(std::pow(1e-3, nu - 1.0), std::pow(1e-14, nu - 1.0), 10);
      const auto prof = distance_profile(op, x, phi, radii);
      REQUIRE(prof.fit);
      CHECK(prof.fit->slope == doctest::Approx(-nu / (1.0 - nu)).epsilon(0.05));
    }
  }
}

TEST_CASE("distance error bound") {
  const auto op = make_operator({DecayKind::polynomial, 1.0, 400});
  const auto phi = IndexFunction::holder(1.0);
  const auto x = make_solution_from_profile(op, {IndexFunction::holder(0.5), 1.0});
  const auto t = FilterFamily::tikhonov();
  const auto alphas = log_grid(1e-8, 1.0, 5);
  std::vector<SpectralVector> samples{SpectralVector::zeros(op.size())};
  for (double a : {1e-6, 1e-3, 1e-1}) samples.push_back(xi_tail(op, x, phi, a));
  const auto rep = distance_error_bound_check(op, x, t, phi, samples, alphas);
  CHECK(rep.pass());
  CHECK(rep.a_hat <= 1.0 + 1e-12);
  CHECK(rep.pairs_checked == samples.size() * alphas.size());
  CHECK(rep.max_ratio <= 1.0);
  CHECK_ERRC(distance_error_bound_check(op, x, t, phi, samples, alphas, 0.5), Errc::precondition_violated);
}
