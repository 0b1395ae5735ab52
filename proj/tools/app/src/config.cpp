#include "specreg/app/config.hpp"

#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "specreg/error.hpp"
#include "specreg/filters.hpp"
#include "specreg/index_function.hpp"
#include "specreg/numeric.hpp"

namespace specreg::app {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw Error(Errc::parse_error, msg); }

void only_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!j.is_object()) fail(where + " must be an object");
  for (const auto& [key, _] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) fail("unknown key '" + key + "' in " + where);
  }
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) fail(where + " must be a number");
  return j.get<double>();
}

std::uint64_t unsigned_int(const json& j, const std::string& where) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0)) {
    fail(where + " must be a non-negative integer");
  }
  return j.get<std::uint64_t>();
}

std::string string(const json& j, const std::string& where) {
  if (!j.is_string()) fail(where + " must be a string");
  return j.get<std::string>();
}

std::vector<double> numbers(const json& j, const std::string& where) {
  if (!j.is_array()) fail(where + " must be an array");
  std::vector<double> v;
  for (const auto& e : j) v.push_back(number(e, where));
  return v;
}

GridSpec grid(const json& j, const std::string& where) {
  GridSpec g;
  if (j.is_array()) {
    g.values = numbers(j, where);
  } else {
    only_keys(j, {"min", "max", "per_decade"}, where);
    if (!j.contains("min") || !j.contains("max") || !j.contains("per_decade")) {
      fail(where + " needs min, max and per_decade");
    }
    const double lo = number(j["min"], where + ".min");
    const double hi = number(j["max"], where + ".max");
    const auto pd = unsigned_int(j["per_decade"], where + ".per_decade");
    if (!(lo > 0.0) || !(hi > lo) || pd == 0) fail(where + " needs 0 < min < max and per_decade >= 1");
    g.values = log_grid(lo, hi, static_cast<int>(pd));
  }
  if (g.values.empty()) fail(where + " is empty");
  for (std::size_t i = 0; i < g.values.size(); ++i) {
    if (!(g.values[i] > 0.0)) fail(where + " must be positive");
    if (i > 0 && !(g.values[i] > g.values[i - 1])) fail(where + " must be increasing");
  }
  if (g.values.size() > 2 && !is_log_spaced(g.values)) fail(where + " must be log-spaced");
  return g;
}

OperatorConfig operator_config(const json& j) {
  only_keys(j, {"kind", "rate", "n", "sigma"}, "operator");
  OperatorConfig c;
  if (j.contains("sigma")) {
    if (j.size() != 1) fail("operator: 'sigma' excludes the other keys");
    c.sigma = numbers(j["sigma"], "operator.sigma");
    (void)SpectralOperator(c.sigma);
    return c;
  }
  OperatorSpec s;
  const std::string kind = j.contains("kind") ? string(j["kind"], "operator.kind") : "polynomial";
  if (kind == "polynomial") {
    s.kind = DecayKind::polynomial;
  } else if (kind == "exponential") {
    s.kind = DecayKind::exponential;
  } else {
    fail("operator.kind must be 'polynomial' or 'exponential'");
  }
  if (!j.contains("n")) fail("operator needs n");
  s.rate = j.contains("rate") ? number(j["rate"], "operator.rate") : 1.0;
  s.n = unsigned_int(j["n"], "operator.n");
  if (!(s.rate > 0.0)) fail("operator.rate must be positive");
  if (s.n == 0 || s.n > kMaxSpectrumSize) fail("operator.n must lie in [1, 1e6]");
  c.spec = s;
  return c;
}

SolutionConfig solution_config(const json& j) {
  only_keys(j, {"profile", "scale", "coeffs", "zero", "source_seed"}, "solution");
  SolutionConfig c;
  const int kinds = int(j.contains("profile")) + int(j.contains("coeffs")) + int(j.contains("zero")) +
                    int(j.contains("source_seed"));
  if (kinds != 1) fail("solution needs exactly one of profile, coeffs, zero, source_seed");
  if (j.contains("scale") && !j.contains("profile")) fail("solution.scale applies to profiles only");
  if (j.contains("profile")) {
    c.kind = SolutionConfig::Kind::profile;
    c.profile = string(j["profile"], "solution.profile");
    (void)IndexFunction::parse(c.profile);
    if (j.contains("scale")) c.scale = number(j["scale"], "solution.scale");
    if (!(c.scale > 0.0)) fail("solution.scale must be positive");
  } else if (j.contains("coeffs")) {
    c.kind = SolutionConfig::Kind::coeffs;
    c.coeffs = numbers(j["coeffs"], "solution.coeffs");
  } else if (j.contains("zero")) {
    if (!j["zero"].is_boolean() || !j["zero"].get<bool>()) fail("solution.zero must be true");
    c.kind = SolutionConfig::Kind::zero;
  } else {
    c.kind = SolutionConfig::Kind::source;
    c.source_seed = unsigned_int(j["source_seed"], "solution.source_seed");
  }
  return c;
}

std::string format(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

SpectralOperator OperatorConfig::build() const {
  if (spec) return make_operator(*spec);
  return SpectralOperator(sigma);
}

std::string OperatorConfig::id() const {
  if (!spec) return "sigma[" + std::to_string(sigma.size()) + "]";
  const char* k = spec->kind == DecayKind::polynomial ? "polynomial" : "exponential";
  return std::string(k) + ":" + format(spec->rate) + ":n=" + std::to_string(spec->n);
}

std::string SolutionConfig::id() const {
  switch (kind) {
    case Kind::profile:
      return profile + (scale != 1.0 ? "*" + format(scale) : "");
    case Kind::coeffs:
      return "coeffs[" + std::to_string(coeffs.size()) + "]";
    case Kind::zero:
      return "zero";
    case Kind::source:
      return "source:seed=" + std::to_string(source_seed);
  }
  return {};
}

std::uint64_t fnv1a(std::string_view bytes) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string ExperimentConfig::hash() const {
  json canon = raw;
  canon["seed"] = seed;
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(canon.dump())));
  return buf;
}

ExperimentConfig parse_config(const json& j) {
  only_keys(j,
            {"operator", "solution", "filter", "phi", "nu", "mu", "alpha_grid", "lambda_grid", "delta_grid",
             "radius_grid", "gamma_grid", "fit_window", "rate_model", "samples", "seed", "ssc_dims", "tolerances",
             "expect", "out"},
            "config");
  ExperimentConfig c;
  c.raw = j;
  if (j.contains("operator")) c.op = operator_config(j["operator"]);
  if (j.contains("solution")) c.solution = solution_config(j["solution"]);
  if (j.contains("filter")) c.filter = string(j["filter"], "filter");
  (void)builtin_family(c.filter);
  if (j.contains("phi")) {
    c.phi = string(j["phi"], "phi");
    (void)IndexFunction::parse(*c.phi);
  }
  if (j.contains("nu")) c.nu = number(j["nu"], "nu");
  if (!(c.nu > 0.0 && c.nu <= 1.0)) fail("nu must lie in (0, 1]");
  if (j.contains("mu")) c.mu = number(j["mu"], "mu");
  if (!(c.mu > 0.0 && c.mu < 1.0)) fail("mu must lie in (0, 1)");
  if (j.contains("alpha_grid")) c.alpha_grid = grid(j["alpha_grid"], "alpha_grid");
  if (j.contains("lambda_grid")) c.lambda_grid = grid(j["lambda_grid"], "lambda_grid");
  if (j.contains("delta_grid")) c.delta_grid = grid(j["delta_grid"], "delta_grid");
  if (j.contains("radius_grid")) c.radius_grid = grid(j["radius_grid"], "radius_grid");
  if (j.contains("gamma_grid")) c.gamma_grid = grid(j["gamma_grid"], "gamma_grid");
  if (j.contains("fit_window")) {
    const auto& w = j["fit_window"];
    only_keys(w, {"alpha_min", "alpha_max"}, "fit_window");
    if (!w.contains("alpha_min") || !w.contains("alpha_max")) fail("fit_window needs alpha_min and alpha_max");
    FitWindow fw{number(w["alpha_min"], "fit_window.alpha_min"), number(w["alpha_max"], "fit_window.alpha_max")};
    if (!(fw.alpha_min > 0.0) || !(fw.alpha_max > fw.alpha_min)) fail("fit_window needs 0 < alpha_min < alpha_max");
    c.fit_window = fw;
  }
  if (j.contains("rate_model")) {
    const auto m = string(j["rate_model"], "rate_model");
    if (m == "power") {
      c.rate_model = RateModel::power;
    } else if (m == "logarithmic") {
      c.rate_model = RateModel::logarithmic;
    } else {
      fail("rate_model must be 'power' or 'logarithmic'");
    }
  }
  if (j.contains("samples")) c.samples = unsigned_int(j["samples"], "samples");
  if (j.contains("seed")) c.seed = unsigned_int(j["seed"], "seed");
  if (j.contains("ssc_dims")) {
    if (!j["ssc_dims"].is_array()) fail("ssc_dims must be an array");
    for (const auto& d : j["ssc_dims"]) c.ssc_dims.push_back(unsigned_int(d, "ssc_dims"));
  }
  if (j.contains("tolerances")) {
    const auto& t = j["tolerances"];
    only_keys(t, {"slope", "spread_max", "bracket_factor", "vi"}, "tolerances");
    if (t.contains("slope")) c.tol.slope = number(t["slope"], "tolerances.slope");
    if (t.contains("spread_max")) c.tol.spread_max = number(t["spread_max"], "tolerances.spread_max");
    if (t.contains("bracket_factor")) c.tol.bracket_factor = number(t["bracket_factor"], "tolerances.bracket_factor");
    if (t.contains("vi")) c.tol.vi = number(t["vi"], "tolerances.vi");
    if (!(c.tol.slope >= 0.0) || !(c.tol.spread_max >= 1.0) || !(c.tol.bracket_factor >= 1.0) ||
        !(c.tol.vi >= 0.0)) {
      fail("tolerances out of range");
    }
  }
  if (j.contains("expect")) {
    const auto& e = j["expect"];
    only_keys(e, {"slope", "spread_max"}, "expect");
    if (e.contains("slope")) c.expect.slope = number(e["slope"], "expect.slope");
    if (e.contains("spread_max")) c.expect.spread_max = number(e["spread_max"], "expect.spread_max");
  }
  if (j.contains("out")) c.out = string(j["out"], "out");
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open config '" + path.string() + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    fail("malformed JSON in '" + path.string() + "': " + e.what());
  }
  return parse_config(j);
}

}  // namespace specreg::app
