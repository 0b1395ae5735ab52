#pragma once

#include <cstdint>
#include <span>

namespace specreg::app {

// Brute-force references for the ball-constrained distance
//   d(R) = min_{||xi|| <= R} ||x - diag(phi) xi||
// that share no code with the multiplier solver.

/// sqrt of max over mu >= 0 of sum x^2 mu / (phi^2 + mu) - mu R^2 (weak duality),
/// from a dense log grid plus golden-section refinement.
double distance_dual_bound(std::span<const double> x, std::span<const double> phi, double radius);

/// Accelerated projected gradient; every iterate is feasible, so the value is an upper bound.
double distance_projected_gradient(std::span<const double> x, std::span<const double> phi, double radius,
                                   int iterations = 20000);

/// Smallest objective over uniformly sampled points of the ball.
double distance_random_feasible(std::span<const double> x, std::span<const double> phi, double radius,
                                std::size_t samples, std::uint64_t seed);

}  // namespace specreg::app
