#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "specreg/operators.hpp"
#include "specreg/rates_exact.hpp"

namespace specreg::app {

/// Either an explicit list or {"min", "max", "per_decade"}.
struct GridSpec {
  std::vector<double> values;
};

struct OperatorConfig {
  std::optional<OperatorSpec> spec;
  std::vector<double> sigma;  // used when spec is empty

  SpectralOperator build() const;
  std::string id() const;
};

struct SolutionConfig {
  enum class Kind { profile, coeffs, zero, source };
  Kind kind = Kind::profile;
  std::string profile;       // index function spec for e(lambda) = scale * target(lambda)
  double scale = 1.0;
  std::vector<double> coeffs;
  std::uint64_t source_seed = 0;  // x = phi^nu omega with omega a seeded random unit vector

  std::string id() const;
};

struct Tolerances {
  double slope = 0.05;
  double spread_max = 5.0;
  double bracket_factor = 1.01;
  double vi = 1e-9;
};

struct Expectation {
  std::optional<double> slope;
  std::optional<double> spread_max;
};

struct ExperimentConfig {
  std::optional<OperatorConfig> op;
  std::optional<SolutionConfig> solution;
  std::string filter = "tikhonov";
  std::optional<std::string> phi;
  double nu = 0.5;
  double mu = 0.5;
  std::optional<GridSpec> alpha_grid, lambda_grid, delta_grid, radius_grid, gamma_grid;
  std::optional<FitWindow> fit_window;
  RateModel rate_model = RateModel::power;
  std::size_t samples = 64;
  std::uint64_t seed = 0;
  std::vector<std::size_t> ssc_dims;
  Tolerances tol;
  Expectation expect;
  std::optional<std::string> out;
  nlohmann::json raw = nlohmann::json::object();

  /// 16 hex digits of FNV-1a over the canonical dump of the config with the
  /// effective seed filled in.
  std::string hash() const;
};

/// Throws specreg::Error(parse_error) on malformed input, unknown keys or
/// values outside the documented ranges.
ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config(const std::filesystem::path& path);

std::uint64_t fnv1a(std::string_view bytes) noexcept;

}  // namespace specreg::app
