#include "specreg/app/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "specreg/app/acceptance.hpp"
#include "specreg/error.hpp"
#include "specreg/filters.hpp"
#include "specreg/numeric.hpp"
#include "specreg/rates_exact.hpp"
#include "specreg/rates_noisy.hpp"
#include "specreg/serialization.hpp"
#include "specreg/source_conditions.hpp"
#include "specreg/spectral_analysis.hpp"

namespace specreg::app {
namespace {

using nlohmann::json;

const SpectralOperator require_operator(const ExperimentConfig& c) {
  if (!c.op) throw Error(Errc::parse_error, "config needs an 'operator'");
  return c.op->build();
}

IndexFunction require_phi(const ExperimentConfig& c) {
  if (!c.phi) throw Error(Errc::parse_error, "config needs 'phi'");
  return IndexFunction::parse(*c.phi);
}

std::vector<double> grid_or(const std::optional<GridSpec>& g, double lo, double hi, int per_decade) {
  return g ? g->values : log_grid(lo, hi, per_decade);
}

std::vector<double> default_deltas() {
  std::vector<double> d;
  for (int k = 0; k < 20; ++k) d.push_back(1e-5 * std::pow(10.0, 3.0 * k / 19.0));
  return d;
}

void add_line(CommandResult& r, const std::string& line) {
  r.summary += line;
  r.summary += '\n';
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

Provenance provenance_of(const ExperimentConfig& c) {
  Provenance p;
  p.operator_id = c.op ? c.op->id() : "";
  p.filter = c.filter;
  p.profile = c.solution ? c.solution->id() : "";
  return p;
}

}  // namespace

std::string version() { return SPECREG_VERSION_STRING; }

std::string dump_report(json report, const ExperimentConfig& config, const std::string& command) {
  report["config_hash"] = config.hash();
  report["version"] = version();
  report["command"] = command;
  return report.dump(2) + "\n";
}

std::string csv_comment(const ExperimentConfig& config) {
  return "specreg " + version() + " config=" + config.hash();
}

SpectralVector build_solution(const ExperimentConfig& config, const SpectralOperator& op) {
  if (!config.solution) throw Error(Errc::parse_error, "config needs a 'solution'");
  const auto& s = *config.solution;
  switch (s.kind) {
    case SolutionConfig::Kind::profile:
      return make_solution_from_profile(op, SourceProfile{IndexFunction::parse(s.profile), s.scale});
    case SolutionConfig::Kind::coeffs: {
      SpectralVector x(s.coeffs);
      require_same_size(op, x, "solution.coeffs");
      return x;
    }
    case SolutionConfig::Kind::zero:
      return SpectralVector::zeros(op.size());
    case SolutionConfig::Kind::source: {
      std::mt19937_64 rng(s.source_seed);
      std::normal_distribution<double> gauss(0.0, 1.0);
      std::vector<double> w(op.size());
      for (auto& v : w) v = gauss(rng);
      SpectralVector omega(std::move(w));
      const double n = omega.norm();
      std::vector<double> unit(op.size());
      for (std::size_t i = 0; i < unit.size(); ++i) unit[i] = omega[i] / n;
      return make_solution_from_source(op, require_phi(config), config.nu, SpectralVector(std::move(unit)));
    }
  }
  throw Error(Errc::parse_error, "unsupported solution kind");
}

CommandResult cmd_validate_filter(const ExperimentConfig& config) {
  const auto f = builtin_family(config.filter);
  const auto alphas = grid_or(config.alpha_grid, 1e-8, 1e2, 20);
  const auto lambdas = grid_or(config.lambda_grid, 1e-8, 1e2, 20);
  const auto rep = validate_generator(f, alphas, lambdas);

  json out = to_json(rep);
  if (config.phi) {
    const auto phi = IndexFunction::parse(*config.phi);
    out["qualification"] = to_json(check_qualification(phi, f, config.mu, alphas, lambdas));
  }
  CommandResult r;
  r.exit_code = rep.all_pass() ? kExitPass : kExitFail;
  const ConditionResult* conds[] = {&rep.cond_i, &rep.cond_ii, &rep.cond_iii, &rep.cond_iv};
  const char* names[] = {"i", "ii", "iii", "iv"};
  for (int k = 0; k < 4; ++k) {
    add_line(r, std::string(conds[k]->pass ? "PASS" : "FAIL") + " cond_" + names[k] +
                    (conds[k]->pass ? "" : ": " + conds[k]->reason));
  }
  add_line(r, "rho_hat=" + fmt(rep.rho_hat) + " rho_tilde_hat=" + fmt(rep.rho_tilde_hat));
  r.files.push_back({"generator_report.json", dump_report(out, config, "validate-filter")});
  return r;
}

CommandResult cmd_rate_exact(const ExperimentConfig& config) {
  const auto op = require_operator(config);
  const auto x = build_solution(config, op);
  const auto f = builtin_family(config.filter);
  const auto alphas = grid_or(config.alpha_grid, 1e-10, 1.0, 20);
  const auto curve = error_curve(op, x, f, alphas, provenance_of(config));

  CommandResult r;
  std::ostringstream csv;
  write_error_curve_csv(csv, curve, csv_comment(config));
  r.files.push_back({"error_curve.csv", csv.str()});

  // r~_alpha(alpha) e(alpha) <= err^2(alpha) at every grid point
  std::size_t lower_violations = 0;
  for (std::size_t i = 0; i < curve.size(); ++i) {
    const double a = curve.alpha[i];
    if (a > f.lambda_max()) continue;
    if (f.r_tilde(a, a) * spectral_function(op, x, a) > curve.err_sq[i]) ++lower_violations;
  }

  json out{{"provenance", json{{"operator", curve.provenance.operator_id},
                               {"filter", curve.provenance.filter},
                               {"profile", curve.provenance.profile}}},
           {"points", curve.size()},
           {"lower_bound_violations", lower_violations}};
  bool ok = lower_violations == 0;
  add_line(r, std::string(ok ? "PASS" : "FAIL") + " lower bound r~(a,a) e(a) <= err^2(a) (" +
                  std::to_string(lower_violations) + " violations)");
  try {
    const FitWindow window = config.fit_window ? *config.fit_window : default_fit_window(curve);
    RateFit fit;
    if (config.rate_model == RateModel::power) {
      fit = fit_power_rate(curve, window);
    } else {
      const double cap = config.phi ? IndexFunction::parse(*config.phi).cap() : IndexFunction::logarithmic(config.nu).cap();
      fit = fit_log_rate(curve, config.nu, window, cap);
    }
    out["fit"] = to_json(fit);
    out["fit_error"] = nullptr;
    if (config.rate_model == RateModel::power) {
      add_line(r, "slope=" + fmt(fit.slope) + " r2=" + fmt(fit.r_squared));
      if (config.expect.slope) {
        const bool hit = std::abs(fit.slope - *config.expect.slope) <= config.tol.slope;
        ok = ok && hit;
        add_line(r, std::string(hit ? "PASS" : "FAIL") + " slope " + fmt(fit.slope) + " vs expected " +
                        fmt(*config.expect.slope) + " +- " + fmt(config.tol.slope));
      }
    } else {
      const double limit = config.expect.spread_max.value_or(config.tol.spread_max);
      const bool hit = fit.spread <= limit;
      ok = ok && hit;
      add_line(r, std::string(hit ? "PASS" : "FAIL") + " spread " + fmt(fit.spread) + " <= " + fmt(limit));
    }
  } catch (const Error& e) {
    if (e.code() != Errc::cannot_fit_log && e.code() != Errc::window_in_cap) throw;
    out["fit"] = nullptr;
    out["fit_error"] = std::string(to_string(e.code()));
    ok = false;
    add_line(r, std::string("FAIL fit refused: ") + e.what());
  }
  r.exit_code = ok ? kExitPass : kExitFail;
  r.files.push_back({"rate_fit.json", dump_report(out, config, "rate-exact")});
  return r;
}

CommandResult cmd_rate_noisy(const ExperimentConfig& config) {
  const auto op = require_operator(config);
  const auto x = build_solution(config, op);
  const auto f = builtin_family(config.filter);
  const auto alphas = grid_or(config.alpha_grid, 1e-12, 1e2, 50);
  const auto deltas = config.delta_grid ? config.delta_grid->values : default_deltas();

  // constants over every alpha that enters the experiment, on spectrum and alpha points
  std::vector<double> used_alpha = alphas;
  for (double d : deltas) {
    try {
      used_alpha.push_back(solve_alpha_delta(op, x, f, d));
    } catch (const Error& e) {
      if (e.code() != Errc::trivial_case) throw;
    }
  }
  std::sort(used_alpha.begin(), used_alpha.end());
  std::vector<double> lam(op.lambda().begin(), op.lambda().end());
  lam.insert(lam.end(), alphas.begin(), alphas.end());
  std::sort(lam.begin(), lam.end());
  const auto gen = validate_generator(f, used_alpha, lam);
  const FilterConstants constants{gen.rho_hat, gen.rho_tilde_hat};

  std::vector<NoisyRateReport> rows;
  for (double d : deltas) rows.push_back(worst_case_bracket(op, x, f, d, alphas, constants));

  CommandResult r;
  std::ostringstream csv;
  write_noisy_csv(csv, rows, csv_comment(config));
  r.files.push_back({"noisy_rate.csv", csv.str()});

  bool ok = true;
  std::size_t inside = 0;
  json jrows = json::array();
  std::vector<double> ld, le;
  for (const auto& row : rows) {
    const bool in = row.bracket_holds(config.tol.bracket_factor);
    inside += in ? 1 : 0;
    auto j = to_json(row);
    j["bracketed"] = in;
    jrows.push_back(std::move(j));
    if (row.adversarial_value > 0.0) {
      ld.push_back(std::log(row.delta));
      le.push_back(std::log(row.adversarial_value));
    }
  }
  ok = inside == rows.size();
  add_line(r, std::string(ok ? "PASS" : "FAIL") + " bracket holds for " + std::to_string(inside) + "/" +
                  std::to_string(rows.size()) + " delta values (factor " + fmt(config.tol.bracket_factor) + ")");
  json out{{"constants", json{{"rho_hat", gen.rho_hat},
                              {"rho_tilde_hat", gen.rho_tilde_hat},
                              {"c0", rows.empty() ? 0.0 : rows.front().c0},
                              {"c1", rows.empty() ? 0.0 : rows.front().c1}}},
           {"rows", std::move(jrows)},
           {"bracket_factor", config.tol.bracket_factor},
           {"all_bracketed", ok}};
  if (ld.size() >= 2) {
    const auto fit = least_squares(ld, le);
    out["delta_fit"] = to_json(fit);
    add_line(r, "delta slope=" + fmt(fit.slope));
    if (config.expect.slope) {
      const bool hit = std::abs(fit.slope - *config.expect.slope) <= config.tol.slope;
      ok = ok && hit;
      add_line(r, std::string(hit ? "PASS" : "FAIL") + " delta slope vs expected " + fmt(*config.expect.slope));
    }
  } else {
    out["delta_fit"] = nullptr;
  }
  r.exit_code = ok ? kExitPass : kExitFail;
  r.files.push_back({"noisy_rate.json", dump_report(out, config, "rate-noisy")});
  return r;
}

CommandResult cmd_var_ineq(const ExperimentConfig& config) {
  const auto op = require_operator(config);
  const auto x = build_solution(config, op);
  const auto phi = require_phi(config);
  const auto rep = vi_constant(op, x, phi, config.nu, config.samples, config.seed);

  CommandResult r;
  const bool fwd = rep.forward_holds(config.tol.vi);
  const bool conv = rep.converse_holds(config.tol.vi);
  add_line(r, std::string(fwd ? "PASS" : "FAIL") + " C_spec <= C_vi^2 (C_spec=" + fmt(rep.c_spec) +
                  ", C_vi=" + fmt(rep.c_vi) + ")");
  add_line(r, std::string(conv ? "PASS" : "FAIL") + " C_vi <= converse bound" +
                  (rep.converse_bound ? " (" + fmt(*rep.converse_bound) + ")" : " (not defined at nu=1)"));
  json out{{"variational", to_json(rep)},
           {"forward_holds", fwd},
           {"converse_holds", conv},
           {"tolerance", config.tol.vi},
           {"ssc", nullptr}};
  if (!config.ssc_dims.empty()) out["ssc"] = to_json(ssc_witness(op, x, phi, config.nu, config.ssc_dims));
  r.exit_code = fwd && conv ? kExitPass : kExitFail;
  r.files.push_back({"variational_report.json", dump_report(out, config, "var-ineq")});
  return r;
}

CommandResult cmd_distance(const ExperimentConfig& config) {
  const auto op = require_operator(config);
  const auto x = build_solution(config, op);
  const auto phi = require_phi(config);
  if (!config.radius_grid) throw Error(Errc::parse_error, "distance needs 'radius_grid'");
  const auto prof = distance_profile(op, x, phi, config.radius_grid->values);

  CommandResult r;
  std::ostringstream csv;
  write_distance_csv(csv, prof, csv_comment(config));
  r.files.push_back({"distance_profile.csv", csv.str()});

  bool ok = prof.non_increasing;
  add_line(r, std::string(prof.non_increasing ? "PASS" : "FAIL") + " d non-increasing in R");
  json out = to_json(prof);
  out["expected_slope"] = config.nu < 1.0 ? json(-config.nu / (1.0 - config.nu)) : json(nullptr);
  if (prof.fit) {
    add_line(r, "slope=" + fmt(prof.fit->slope));
    if (config.expect.slope) {
      const bool hit = std::abs(prof.fit->slope - *config.expect.slope) <= config.tol.slope;
      ok = ok && hit;
      add_line(r, std::string(hit ? "PASS" : "FAIL") + " slope vs expected " + fmt(*config.expect.slope));
    }
  }
  out["error_bound"] = nullptr;
  if (config.alpha_grid) {
    const auto f = builtin_family(config.filter);
    std::vector<SpectralVector> samples{SpectralVector::zeros(op.size())};
    for (double a : config.alpha_grid->values) samples.push_back(xi_tail(op, x, phi, a));
    for (double rad : config.radius_grid->values) samples.push_back(distance_function(op, x, phi, rad).xi);
    const auto bound = distance_error_bound_check(op, x, f, phi, samples, config.alpha_grid->values);
    ok = ok && bound.pass();
    add_line(r, std::string(bound.pass() ? "PASS" : "FAIL") + " error bound over " +
                    std::to_string(bound.pairs_checked) + " (xi, alpha) pairs, A=" + fmt(bound.a_hat));
    out["error_bound"] = to_json(bound);
  }
  r.exit_code = ok ? kExitPass : kExitFail;
  r.files.push_back({"distance_fit.json", dump_report(out, config, "distance")});
  return r;
}

CommandResult cmd_run_all(const ExperimentConfig& config) {
  CommandResult r;
  json list = json::array();
  bool ok = true;
  for (int id = 1; id <= criterion_count(); ++id) {
    auto c = run_criterion(id, config.seed);
    ok = ok && c.ok();
    add_line(r, c.line());
    list.push_back(json{{"id", c.id},
                        {"name", c.name},
                        {"passed", c.passed},
                        {"detail", c.detail},
                        {"supplementary", c.supplementary}});
    for (auto& file : c.files) r.files.push_back({"criterion" + std::to_string(c.id) + "_" + file.name, file.content});
  }
  r.files.push_back({"acceptance.json", dump_report(json{{"criteria", list}, {"seed", config.seed}}, config, "run-all")});
  r.exit_code = ok ? kExitPass : kExitFail;
  return r;
}

CommandResult run_command(const std::string& name, const ExperimentConfig& config) {
  if (name == "validate-filter") return cmd_validate_filter(config);
  if (name == "rate-exact") return cmd_rate_exact(config);
  if (name == "rate-noisy") return cmd_rate_noisy(config);
  if (name == "var-ineq") return cmd_var_ineq(config);
  if (name == "distance") return cmd_distance(config);
  if (name == "run-all") return cmd_run_all(config);
  throw Error(Errc::unknown_name, "unknown subcommand '" + name + "'");
}

void write_outputs(const std::filesystem::path& dir, const std::vector<OutputFile>& files) {
  std::filesystem::create_directories(dir);
  for (const auto& f : files) {
    std::ofstream out(dir / f.name, std::ios::binary);
    if (!out) throw Error(Errc::invalid_argument, "cannot write '" + (dir / f.name).string() + "'");
    out << f.content;
  }
}

}  // namespace specreg::app
