#pragma once

// Shared test helpers and reference implementations that do not call into the
// library code they check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include <doctest.h>

#include "specreg/error.hpp"

#define CHECK_ERRC(expr, errc)                                   \
  do {                                                           \
    bool thrown_ = false;                                        \
    try {                                                        \
      (void)(expr);                                              \
    } catch (const specreg::Error& e_) {                         \
      thrown_ = true;                                            \
      CHECK_MESSAGE(e_.code() == (errc), e_.what());             \
    }                                                            \
    CHECK_MESSAGE(thrown_, "expected specreg::Error: " #expr);   \
  } while (0)

namespace testing {

inline std::vector<double> random_normal(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> v(n);
  for (auto& e : v) e = g(rng);
  return v;
}

inline std::vector<double> random_decreasing(std::size_t n, std::uint64_t seed, double lo = 1e-3) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(std::log(lo), 0.0);
  std::vector<double> v(n);
  for (auto& e : v) e = std::exp(u(rng));
  std::sort(v.begin(), v.end(), [](double a, double b) { return a > b; });
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

inline std::vector<double> geometric(double lo, double hi, int count) {
  std::vector<double> v;
  for (int k = 0; k < count; ++k) v.push_back(lo * std::pow(hi / lo, double(k) / (count - 1)));
  return v;
}

// Tikhonov error function straight from its definition.
inline long double tikhonov_rt(long double a, long double l) {
  const long double r = 1.0L / (a + l);
  const long double s = 1.0L - l * r;
  return s * s;
}

// Iterated Tikhonov generator by running the iteration r_{j+1} = (1 + a r_j) / (l + a).
inline long double itik_r(int m, long double a, long double l) {
  long double r = 0.0L;
  for (int j = 0; j < m; ++j) r = (1.0L + a * r) / (l + a);
  return r;
}

// Landweber generator as the truncated Neumann series sum_{j<k} (1 - l)^j.
inline long double landweber_r(int k, long double l) {
  long double s = 0.0L, p = 1.0L;
  for (int j = 0; j < k; ++j) {
    s += p;
    p *= 1.0L - l;
  }
  return s;
}

}  // namespace testing
