#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "specreg/index_function.hpp"

namespace specreg {

inline constexpr std::size_t kMaxSpectrumSize = 1'000'000;

/// Diagonal model of L: strictly decreasing singular values sigma_i > 0 and
/// the eigenvalues lambda_i = sigma_i^2 of L*L (= LL* on the range). The kernel
/// is never stored, so every coefficient vector lives in N(L)^perp.
class SpectralOperator {
 public:
  explicit SpectralOperator(std::vector<double> sigma);

  std::span<const double> sigma() const noexcept { return sigma_; }
  std::span<const double> lambda() const noexcept { return lambda_; }
  double norm_sq() const noexcept { return lambda_.front(); }
  std::size_t size() const noexcept { return sigma_.size(); }

 private:
  std::vector<double> sigma_;
  std::vector<double> lambda_;
};

/// Coefficients in the singular basis (x-dagger, y, y-tilde, xi, omega, ...).
class SpectralVector {
 public:
  SpectralVector() = default;
  explicit SpectralVector(std::vector<double> coeffs);
  static SpectralVector zeros(std::size_t n) { return SpectralVector(std::vector<double>(n, 0.0)); }

  std::span<const double> coeffs() const noexcept { return coeffs_; }
  std::span<double> coeffs_mut() noexcept { return coeffs_; }
  std::size_t size() const noexcept { return coeffs_.size(); }
  double operator[](std::size_t i) const noexcept { return coeffs_[i]; }
  double norm_sq() const noexcept;
  double norm() const noexcept;

 private:
  std::vector<double> coeffs_;
};

enum class DecayKind { polynomial, exponential };

struct OperatorSpec {
  DecayKind kind = DecayKind::polynomial;
  double rate = 1.0;  // p for polynomial, gamma for exponential
  std::size_t n = 1;
};

/// polynomial: sigma_i = i^-p, exponential: sigma_i = exp(-gamma i), i = 1..n.
SpectralOperator make_operator(const OperatorSpec& spec);

/// Requested spectral function scale * e_target(lambda).
struct SourceProfile {
  IndexFunction target;
  double scale = 1.0;
};

/// x_i = sqrt(scale * (e_target(lambda_i) - e_target(lambda_{i+1}))) with
/// lambda_{n+1} = 0, which makes e(lambda_j) = scale * e_target(lambda_j) at every
/// spectrum point.
SpectralVector make_solution_from_profile(const SpectralOperator& op, const SourceProfile& profile);

/// e(lam) = sum of x_i^2 over lambda_i <= lam.
double spectral_function(const SpectralOperator& op, const SpectralVector& x, double lam);

/// e(lambda_j) for every j, computed in one pass.
std::vector<double> spectral_function_at_modes(const SpectralOperator& op, const SpectralVector& x);

/// y_i = sigma_i x_i.
SpectralVector apply_forward(const SpectralOperator& op, const SpectralVector& x);

void require_same_size(const SpectralOperator& op, const SpectralVector& x, const char* what);

nlohmann::json to_json(const SpectralOperator& op);
nlohmann::json to_json(const SpectralVector& x);
SpectralOperator operator_from_json(const nlohmann::json& j);
SpectralVector vector_from_json(const nlohmann::json& j);

/// CSV with header `lambda,coeff,e`, one row per mode in storage order.
void write_spectral_csv(std::ostream& out, const SpectralOperator& op, const SpectralVector& x);

}  // namespace specreg
