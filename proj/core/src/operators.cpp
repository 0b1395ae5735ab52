#include "specreg/operators.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "specreg/error.hpp"
#include "specreg/numeric.hpp"

namespace specreg {

SpectralOperator::SpectralOperator(std::vector<double> sigma) : sigma_(std::move(sigma)) {
  if (sigma_.empty()) throw Error(Errc::invalid_argument, "operator needs at least one singular value");
  if (sigma_.size() > kMaxSpectrumSize) {
    throw Error(Errc::invalid_argument, "spectrum larger than " + std::to_string(kMaxSpectrumSize));
  }
  lambda_.resize(sigma_.size());
  for (std::size_t i = 0; i < sigma_.size(); ++i) {
    const double s = sigma_[i];
    if (!std::isfinite(s) || !(s > 0.0)) {
      throw Error(Errc::invalid_argument, "singular values must be finite and positive");
    }
    if (i > 0 && !(s < sigma_[i - 1])) {
      throw Error(Errc::invalid_argument, "singular values must be strictly decreasing");
    }
    lambda_[i] = s * s;
    if (!(lambda_[i] > 0.0) || (i > 0 && !(lambda_[i] < lambda_[i - 1]))) {
      throw Error(Errc::invalid_argument, "eigenvalues underflow or collide");
    }
  }
}

SpectralVector::SpectralVector(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  for (double c : coeffs_) {
    if (!std::isfinite(c)) throw Error(Errc::invalid_argument, "coefficients must be finite");
  }
}

double SpectralVector::norm_sq() const noexcept {
  CompensatedSum s;
  for (double c : coeffs_) s += c * c;
  return s.value();
}

double SpectralVector::norm() const noexcept { return std::sqrt(norm_sq()); }

SpectralOperator make_operator(const OperatorSpec& spec) {
  if (!(spec.rate > 0.0) || !std::isfinite(spec.rate)) {
    throw Error(Errc::invalid_argument, "decay parameter must be positive");
  }
  if (spec.n < 1) throw Error(Errc::invalid_argument, "operator needs n >= 1");
  std::vector<double> sigma(spec.n);
  for (std::size_t i = 0; i < spec.n; ++i) {
    const double k = static_cast<double>(i + 1);
    sigma[i] = spec.kind == DecayKind::polynomial ? std::pow(k, -spec.rate) : std::exp(-spec.rate * k);
  }
  return SpectralOperator(std::move(sigma));
}

SpectralVector make_solution_from_profile(const SpectralOperator& op, const SourceProfile& profile) {
  if (!(profile.scale > 0.0) || !std::isfinite(profile.scale)) {
    throw Error(Errc::invalid_argument, "profile scale must be positive");
  }
  const auto lam = op.lambda();
  const std::size_t n = op.size();
  std::vector<double> x(n);
  double below = 0.0;  // e_target(lambda_{i+1}), starting from lambda_{n+1} := 0
  for (std::size_t k = n; k-- > 0;) {
    const double here = profile.target(lam[k]);
    const double gap = here - below;
    if (!(gap >= 0.0) || !std::isfinite(gap)) {
      throw Error(Errc::profile_not_increasing,
                  "e_target decreases between spectrum points " + std::to_string(k + 1) + " and " +
                      std::to_string(k + 2));
    }
    x[k] = std::sqrt(profile.scale * gap);
    below = here;
  }
  return SpectralVector(std::move(x));
}

void require_same_size(const SpectralOperator& op, const SpectralVector& x, const char* what) {
  if (op.size() != x.size()) {
    throw Error(Errc::length_mismatch, std::string(what) + ": vector length " + std::to_string(x.size()) +
                                           " differs from spectrum size " + std::to_string(op.size()));
  }
}

double spectral_function(const SpectralOperator& op, const SpectralVector& x, double lam) {
  require_same_size(op, x, "spectral_function");
  const auto lambda = op.lambda();
  // lambda is descending: modes with lambda_i <= lam form a suffix.
  const auto first = std::partition_point(lambda.begin(), lambda.end(), [lam](double l) { return l > lam; });
  CompensatedSum s;
  for (auto i = static_cast<std::size_t>(first - lambda.begin()); i < x.size(); ++i) s += x[i] * x[i];
  return s.value();
}

std::vector<double> spectral_function_at_modes(const SpectralOperator& op, const SpectralVector& x) {
  require_same_size(op, x, "spectral_function_at_modes");
  std::vector<double> e(x.size());
  CompensatedSum s;
  for (std::size_t k = x.size(); k-- > 0;) {
    s += x[k] * x[k];
    e[k] = s.value();
  }
  return e;
}

SpectralVector apply_forward(const SpectralOperator& op, const SpectralVector& x) {
  require_same_size(op, x, "apply_forward");
  std::vector<double> y(x.size());
  const auto sigma = op.sigma();
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = sigma[i] * x[i];
  return SpectralVector(std::move(y));
}

nlohmann::json to_json(const SpectralOperator& op) {
  return nlohmann::json{{"sigma", std::vector<double>(op.sigma().begin(), op.sigma().end())}};
}

nlohmann::json to_json(const SpectralVector& x) {
  return nlohmann::json{{"coeffs", std::vector<double>(x.coeffs().begin(), x.coeffs().end())}};
}

SpectralOperator operator_from_json(const nlohmann::json& j) {
  if (!j.is_object() || j.size() != 1 || !j.contains("sigma") || !j.at("sigma").is_array()) {
    throw Error(Errc::parse_error, "operator JSON must be {\"sigma\": [...]}");
  }
  return SpectralOperator(j.at("sigma").get<std::vector<double>>());
}

SpectralVector vector_from_json(const nlohmann::json& j) {
  if (!j.is_object() || j.size() != 1 || !j.contains("coeffs") || !j.at("coeffs").is_array()) {
    throw Error(Errc::parse_error, "vector JSON must be {\"coeffs\": [...]}");
  }
  return SpectralVector(j.at("coeffs").get<std::vector<double>>());
}

void write_spectral_csv(std::ostream& out, const SpectralOperator& op, const SpectralVector& x) {
  const auto e = spectral_function_at_modes(op, x);
  const auto lam = op.lambda();
  const auto old_precision = out.precision(17);
  out << "lambda,coeff,e\n";
  for (std::size_t i = 0; i < x.size(); ++i) out << lam[i] << ',' << x[i] << ',' << e[i] << '\n';
  out.precision(old_precision);
}

}  // namespace specreg
