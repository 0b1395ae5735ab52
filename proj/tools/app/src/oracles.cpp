#include "specreg/app/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

namespace specreg::app {
namespace {

double dual(std::span<const double> x, std::span<const double> phi, double radius, double mu) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * x[i] * mu / (phi[i] * phi[i] + mu);
  return s - mu * radius * radius;
}

double objective(std::span<const double> x, std::span<const double> phi, const std::vector<double>& xi) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double t = x[i] - phi[i] * xi[i];
    s += t * t;
  }
  return std::sqrt(s);
}

void project(std::vector<double>& v, double radius) {
  double n = 0.0;
  for (double e : v) n += e * e;
  n = std::sqrt(n);
  if (n > radius) {
    for (double& e : v) e *= radius / n;
  }
}

}  // namespace

double distance_dual_bound(std::span<const double> x, std::span<const double> phi, double radius) {
  double best = 0.0, best_u = -60.0;  // mu = 0 gives 0
  const double lo = -60.0, hi = 60.0;  // log10 mu
  const int steps = 24000;
  for (int k = 0; k <= steps; ++k) {
    const double u = lo + (hi - lo) * k / steps;
    const double v = dual(x, phi, radius, std::pow(10.0, u));
    if (v > best) {
      best = v;
      best_u = u;
    }
  }
  // the dual is concave in mu; refine in mu between the grid neighbours
  double a = std::pow(10.0, best_u - (hi - lo) / steps), b = std::pow(10.0, best_u + (hi - lo) / steps);
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = dual(x, phi, radius, c), fd = dual(x, phi, radius, d);
  for (int it = 0; it < 200; ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = dual(x, phi, radius, c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = dual(x, phi, radius, d);
    }
  }
  best = std::max({best, fc, fd});
  return std::sqrt(std::max(best, 0.0));
}

double distance_projected_gradient(std::span<const double> x, std::span<const double> phi, double radius,
                                   int iterations) {
  const std::size_t n = x.size();
  double lip = 0.0;
  for (double p : phi) lip = std::max(lip, p * p);
  if (lip == 0.0 || radius == 0.0) return objective(x, phi, std::vector<double>(n, 0.0));
  std::vector<double> xi(n, 0.0), prev(n, 0.0), z(n, 0.0);
  double t = 1.0;
  double best = objective(x, phi, xi);
  for (int it = 0; it < iterations; ++it) {
    for (std::size_t i = 0; i < n; ++i) z[i] += phi[i] * (x[i] - phi[i] * z[i]) / lip;
    project(z, radius);
    prev.swap(xi);
    xi = z;
    const double tn = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    for (std::size_t i = 0; i < n; ++i) z[i] = xi[i] + (t - 1.0) / tn * (xi[i] - prev[i]);
    project(z, radius);
    t = tn;
    best = std::min(best, objective(x, phi, xi));
  }
  return best;
}

double distance_random_feasible(std::span<const double> x, std::span<const double> phi, double radius,
                                std::size_t samples, std::uint64_t seed) {
  const std::size_t n = x.size();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> xi(n);
  double best = objective(x, phi, std::vector<double>(n, 0.0));
  for (std::size_t s = 0; s < samples; ++s) {
    double nn = 0.0;
    for (auto& v : xi) {
      v = gauss(rng);
      nn += v * v;
    }
    const double r = radius * std::pow(unif(rng), 1.0 / static_cast<double>(n)) / std::sqrt(nn);
    for (auto& v : xi) v *= r;
    best = std::min(best, objective(x, phi, xi));
  }
  return best;
}

}  // namespace specreg::app
