#include "specreg/app/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <limits>
#include <random>
#include <sstream>

#include "specreg/app/oracles.hpp"
#include "specreg/error.hpp"
#include "specreg/filters.hpp"
#include "specreg/numeric.hpp"
#include "specreg/operators.hpp"
#include "specreg/rates_exact.hpp"
#include "specreg/rates_noisy.hpp"
#include "specreg/serialization.hpp"
#include "specreg/source_conditions.hpp"
#include "specreg/spectral_analysis.hpp"

namespace specreg::app {
namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

constexpr double kInf = std::numeric_limits<double>::infinity();

#ifdef NDEBUG
constexpr bool kEnforceTime = true;
#else
constexpr bool kEnforceTime = false;
#endif

std::string fmt(double v, int precision = 6) {
  std::ostringstream os;
  os.precision(precision);
  os << v;
  return os.str();
}

double elapsed(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

OutputFile json_file(const std::string& name, json body, const json& params) {
  ExperimentConfig c;
  c.raw = params;
  return {name, dump_report(std::move(body), c, "run-all")};
}

std::string csv_tag(const json& params) {
  ExperimentConfig c;
  c.raw = params;
  return csv_comment(c);
}

std::vector<double> geometric(double lo, double hi, int count) {
  std::vector<double> v;
  for (int k = 0; k < count; ++k) v.push_back(lo * std::pow(hi / lo, static_cast<double>(k) / (count - 1)));
  return v;
}

SpectralVector unit_random(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> w(n);
  double s = 0.0;
  for (auto& v : w) {
    v = gauss(rng);
    s += v * v;
  }
  for (auto& v : w) v /= std::sqrt(s);
  return SpectralVector(std::move(w));
}

// ---------------------------------------------------------------------------

void generator_validation(CriterionResult& out, std::uint64_t) {
  const auto grid = log_grid(1e-8, 1e2, 20);
  const auto tik = FilterFamily::tikhonov();
  const auto rt = validate_generator(tik, grid, grid);
  std::size_t off_quarter = 0;
  for (double a : grid) off_quarter += tik.r_tilde(a, a) == 0.25 ? 0 : 1;
  const auto cut = validate_generator(FilterFamily::cutoff(2.0), grid, grid);

  const bool tik_ok = rt.all_pass() && rt.rho_hat <= 0.5 + 1e-9 && off_quarter == 0;
  const bool cut_ok = !cut.cond_iii.pass && cut.cond_iii.witness && !cut.cond_iv.pass && cut.cond_iv.witness;
  out.passed = tik_ok && cut_ok;
  out.detail = "tikhonov all_pass=" + std::string(rt.all_pass() ? "yes" : "no") + " rho_hat=" + fmt(rt.rho_hat, 12) +
               " r~(a,a)!=1/4 at " + std::to_string(off_quarter) + " points; cutoff:2 cond_iii " +
               (cut.cond_iii.pass ? "pass" : "fail") + ", cond_iv " + (cut.cond_iv.pass ? "pass" : "fail");
  const json params{{"criterion", 1}, {"grid", {{"min", 1e-8}, {"max", 1e2}, {"per_decade", 20}}}};
  out.files.push_back(json_file("tikhonov.json", to_json(rt), params));
  out.files.push_back(json_file("cutoff2.json", to_json(cut), params));
}

struct HolderRun {
  double slope = 0.0;
  std::size_t lower_violations = 0;
  ErrorCurve curve;
};

HolderRun holder_rate(double p, double nu) {
  const auto op = make_operator({DecayKind::polynomial, p, 4000});
  const auto x = make_solution_from_profile(op, {IndexFunction::holder(2.0 * nu), 1.0});
  const auto f = FilterFamily::tikhonov();
  HolderRun run;
  run.curve = error_curve(op, x, f, log_grid(1e-7, 1e-2, 20));
  run.slope = fit_power_rate(run.curve, {1e-7, 1e-2}).slope;
  for (std::size_t i = 0; i < run.curve.size(); ++i) {
    const double a = run.curve.alpha[i];
    if (f.r_tilde(a, a) * spectral_function(op, x, a) > run.curve.err_sq[i]) ++run.lower_violations;
  }
  return run;
}

void holder_equivalence(CriterionResult& out, std::uint64_t) {
  bool ok = true;
  std::string detail, supp = "p=1 reference:";
  for (double nu : {0.25, 0.5, 0.75}) {
    const auto t0 = Clock::now();
    const auto run = holder_rate(0.5, nu);
    const double secs = elapsed(t0);
    const bool hit = std::abs(run.slope - 2.0 * nu) <= 0.05;
    if (kEnforceTime && secs >= 5.0) out.within_time = false;
    ok = ok && hit && run.lower_violations == 0;
    detail += (detail.empty() ? "" : "; ") + std::string("nu=") + fmt(nu) + " slope=" + fmt(run.slope, 4) +
              " (target " + fmt(2.0 * nu) + ") lower-bound violations=" + std::to_string(run.lower_violations);
    std::ostringstream csv;
    const json params{{"criterion", 2}, {"p", 0.5}, {"nu", nu}, {"n", 4000}};
    write_error_curve_csv(csv, run.curve, csv_tag(params));
    out.files.push_back({"holder_nu" + fmt(nu) + ".csv", csv.str()});
    supp += " nu=" + fmt(nu) + " slope=" + fmt(holder_rate(1.0, nu).slope, 4);
  }
  out.passed = ok;
  out.detail = detail;
  out.supplementary = supp + " (non-gating)";
}

void log_equivalence(CriterionResult& out, std::uint64_t) {
  const auto op = make_operator({DecayKind::exponential, 0.05, 400});
  const auto profile = IndexFunction::logarithmic(0.5);
  const auto x = make_solution_from_profile(op, {profile, 1.0});
  const auto f = FilterFamily::tikhonov();
  const auto curve = error_curve(op, x, f, log_grid(1e-9, 1e-3, 20));
  const FitWindow window{1e-9, 1e-3};
  const auto matched = fit_log_rate(curve, 0.5, window, profile.cap());
  const auto mismatched = fit_log_rate(curve, 0.7, window, profile.cap());
  out.passed = matched.spread <= 5.0 && mismatched.spread > 5.0;
  out.detail = "spread(nu=0.5)=" + fmt(matched.spread, 4) + " (<= 5), control spread(nu=0.7)=" +
               fmt(mismatched.spread, 4) + " (needs > 5)";
  // the mismatched weight drifts monotonically across the window, the matched one does not
  std::vector<double> la, lw5, lw7;
  for (std::size_t i = 0; i < curve.size(); ++i) {
    const double a = curve.alpha[i];
    if (a < window.alpha_min * (1 - 1e-12) || a > window.alpha_max * (1 + 1e-12)) continue;
    la.push_back(std::log(std::abs(std::log(a))));
    lw5.push_back(std::log(curve.err_sq[i] * std::pow(std::abs(std::log(a)), 0.5)));
    lw7.push_back(std::log(curve.err_sq[i] * std::pow(std::abs(std::log(a)), 0.7)));
  }
  const auto d5 = least_squares(la, lw5), d7 = least_squares(la, lw7);
  out.supplementary = "log-log drift of the weighted error vs |log alpha|: nu=0.5 " + fmt(d5.slope, 3) +
                      ", nu=0.7 " + fmt(d7.slope, 3) + " (non-gating)";
  const json params{{"criterion", 3}, {"gamma", 0.05}, {"n", 400}, {"profile", "log:0.5"}};
  std::ostringstream csv;
  write_error_curve_csv(csv, curve, csv_tag(params));
  out.files.push_back({"log_curve.csv", csv.str()});
  out.files.push_back(json_file("log_fit.json", json{{"matched", to_json(matched)}, {"control", to_json(mismatched)}},
                                params));
}

struct NoisyRun {
  std::vector<NoisyRateReport> rows;
  FilterConstants constants;
};

NoisyRun noisy_instance() {
  const auto op = make_operator({DecayKind::polynomial, 1.0, 4000});
  const auto x = make_solution_from_profile(op, {IndexFunction::holder(1.0), 1.0});
  const auto f = FilterFamily::tikhonov();
  const auto alphas = log_grid(1e-12, 1e2, 50);
  const auto deltas = geometric(1e-5, 1e-2, 20);
  std::vector<double> used = alphas;
  for (double d : deltas) used.push_back(solve_alpha_delta(op, x, f, d));
  std::sort(used.begin(), used.end());
  const auto gen = validate_generator(f, used, used);
  NoisyRun run;
  run.constants = {gen.rho_hat, gen.rho_tilde_hat};
  for (double d : deltas) run.rows.push_back(worst_case_bracket(op, x, f, d, alphas, run.constants));
  return run;
}

void noisy_bracket(CriterionResult& out, std::uint64_t) {
  const auto run = noisy_instance();
  std::size_t inside = 0;
  double worst_low = kInf, worst_high = 0.0;
  for (const auto& r : run.rows) {
    inside += r.bracket_holds(1.01) ? 1 : 0;
    if (r.lower) worst_low = std::min(worst_low, r.adversarial_value / *r.lower);
    worst_high = std::max(worst_high, r.adversarial_value / r.upper);
  }
  out.passed = inside == run.rows.size() && run.rows.size() == 20;
  out.detail = std::to_string(inside) + "/20 bracketed; min adversarial/lower=" + fmt(worst_low, 4) +
               " max adversarial/upper=" + fmt(worst_high, 4) + " (rho_hat=" + fmt(run.constants.rho_hat, 10) +
               ", rho_tilde_hat=" + fmt(run.constants.rho_tilde_hat, 10) + ")";
  const json params{{"criterion", 4}, {"p", 1.0}, {"n", 4000}, {"profile", "holder:1"}, {"filter", "tikhonov"}};
  std::ostringstream csv;
  write_noisy_csv(csv, run.rows, csv_tag(params));
  out.files.push_back({"noisy_bracket.csv", csv.str()});
}

void noisy_transfer(CriterionResult& out, std::uint64_t) {
  const auto run = noisy_instance();
  std::vector<double> ld, le;
  for (const auto& r : run.rows) {
    ld.push_back(std::log(r.delta));
    le.push_back(std::log(r.adversarial_value));
  }
  const auto fit = least_squares(ld, le);
  const bool slope_ok = std::abs(fit.slope - 1.0) <= 0.05;

  bool psi_ok = true;
  json psi_rows = json::array();
  double worst_res = 0.0;
  for (int k = 4; k <= 10; ++k) {
    const double delta = std::pow(10.0, -k);
    const double psi = solve_log_psi(0.5, delta);
    const double lo = std::pow(std::abs(2.0 * std::log(delta)), -0.5);
    const double hi = std::pow(std::abs(std::log(delta)), -0.5);
    const double res = std::abs(log_psi_residual(0.5, delta, psi));
    worst_res = std::max(worst_res, res);
    psi_ok = psi_ok && lo <= psi && psi <= hi && res <= 1e-10;
    psi_rows.push_back(json{{"delta", delta}, {"psi", psi}, {"lower", lo}, {"upper", hi}, {"residual", res}});
  }
  out.passed = slope_ok && psi_ok;
  out.detail = "delta slope=" + fmt(fit.slope, 4) + " (target 1 +- 0.05); log psi bounds " +
               (psi_ok ? "hold" : "fail") + " for delta=1e-4..1e-10, max residual=" + fmt(worst_res, 3);
  const json params{{"criterion", 5}, {"p", 1.0}, {"n", 4000}, {"profile", "holder:1"}, {"psi_nu", 0.5}};
  out.files.push_back(json_file("transfer.json", json{{"delta_fit", to_json(fit)}, {"log_psi", psi_rows}}, params));
}

void variational(CriterionResult& out, std::uint64_t seed) {
  bool ok = true;
  std::size_t instances = 0;
  double worst_fwd = -kInf, worst_conv = -kInf;
  json reports = json::array();
  auto check = [&](const SpectralOperator& op, const SpectralVector& x, const IndexFunction& phi, double nu,
                   const std::string& label) {
    const auto rep = vi_constant(op, x, phi, nu, 64, seed);
    ++instances;
    ok = ok && rep.forward_holds(1e-9) && rep.converse_holds(1e-9);
    worst_fwd = std::max(worst_fwd, rep.c_spec - rep.c_vi * rep.c_vi);
    if (rep.converse_bound) worst_conv = std::max(worst_conv, rep.c_vi - *rep.converse_bound);
    auto j = to_json(rep);
    j["instance"] = label;
    reports.push_back(std::move(j));
  };

  const auto single = SpectralOperator({1.0});
  double single_err = 0.0;
  for (double nu : {0.25, 0.5}) {
    const auto rep = vi_constant(single, SpectralVector({1.0}), IndexFunction::holder(1.0), nu, 64, seed);
    single_err = std::max(single_err, std::abs(rep.c_vi - 1.0));
  }
  const bool single_ok = single_err <= 1e-12;

  const auto poly = make_operator({DecayKind::polynomial, 1.0, 2000});
  const auto expo = make_operator({DecayKind::exponential, 0.05, 400});
  for (double nu : {0.25, 0.5}) {
    for (double q : {0.5, 1.0, 2.0}) {
      const auto phi = IndexFunction::holder(q);
      check(poly, make_solution_from_profile(poly, {IndexFunction::holder(2.0 * nu * q), 1.0}), phi, nu,
            "poly e=phi^(2nu) q=" + fmt(q));
      check(expo, make_solution_from_profile(expo, {IndexFunction::holder(2.0 * nu * q), 1.0}), phi, nu,
            "expo e=phi^(2nu) q=" + fmt(q));
      check(poly, make_solution_from_source(poly, phi, nu, unit_random(poly.size(), seed + 11)), phi, nu,
            "poly source q=" + fmt(q));
    }
    check(poly, make_solution_from_profile(poly, {IndexFunction::logarithmic(0.5), 1.0}),
          IndexFunction::logarithmic(1.0), nu, "poly log profile");
    for (std::uint64_t s = 0; s < 3; ++s) {
      check(poly, unit_random(poly.size(), seed + 100 + s), IndexFunction::holder(1.0), nu,
            "poly random seed+" + std::to_string(100 + s));
    }
  }
  out.passed = ok && single_ok;
  out.detail = std::to_string(instances) + " instances, max(C_spec - C_vi^2)=" + fmt(worst_fwd, 3) +
               ", max(C_vi - converse)=" + fmt(worst_conv, 3) + "; single mode |C_vi - 1|=" + fmt(single_err, 3);
  out.files.push_back(json_file("variational.json", json{{"reports", reports}},
                                json{{"criterion", 6}, {"seed", seed}, {"samples", 64}}));
}

void ssc_counterexample(CriterionResult& out, std::uint64_t seed) {
  const auto op = make_operator({DecayKind::polynomial, 1.0, 10000});
  const auto phi = IndexFunction::holder(1.0);
  const std::vector<std::size_t> dims{100, 1000, 10000};
  bool ok = true;
  std::string detail;
  json witnesses = json::array();
  for (double nu : {0.25, 0.5}) {
    const auto x = make_solution_from_profile(op, {IndexFunction::holder(2.0 * nu), 1.0});
    const auto w = ssc_witness(op, x, phi, nu, dims);
    for (std::size_t k = 1; k < dims.size(); ++k) {
      const double gain = w.witness_norm_sq[k] - w.witness_norm_sq[k - 1];
      const double need = 0.5 * 2.0 * nu * (w.log_phi_ratio[k] - w.log_phi_ratio[k - 1]);
      ok = ok && gain >= need;
      detail += (detail.empty() ? "" : "; ") + std::string("nu=") + fmt(nu) + " n=" + std::to_string(dims[k - 1]) +
                "->" + std::to_string(dims[k]) + " gain=" + fmt(gain, 4) + " (needs " + fmt(need, 4) + ")";
    }
    const auto xs = make_solution_from_source(op, phi, nu, unit_random(op.size(), seed + 7));
    const auto ws = ssc_witness(op, xs, phi, nu, dims);
    const double top = *std::max_element(ws.witness_norm_sq.begin(), ws.witness_norm_sq.end());
    ok = ok && top <= 1.0 + 1e-9;
    detail += "; membership max=" + fmt(top, 12);
    auto j = to_json(w);
    j["instance"] = "e=phi^(2nu)";
    witnesses.push_back(std::move(j));
    auto js = to_json(ws);
    js["instance"] = "membership";
    witnesses.push_back(std::move(js));
  }
  out.passed = ok;
  out.detail = detail;
  out.files.push_back(json_file("ssc.json", json{{"witnesses", witnesses}}, json{{"criterion", 7}, {"seed", seed}}));
}

void distance(CriterionResult& out, std::uint64_t seed) {
  // (a) KKT solution against brute force on small random instances
  std::size_t mismatches = 0;
  double worst_gap = 0.0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    std::mt19937_64 rng(seed * 1000003ULL + s);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::normal_distribution<double> g(0.0, 1.0);
    const std::size_t n = 1 + s % 6;
    std::vector<double> sig(n);
    for (auto& v : sig) v = 0.05 + 0.95 * u(rng);
    std::sort(sig.begin(), sig.end(), std::greater<>());
    sig.erase(std::unique(sig.begin(), sig.end()), sig.end());
    const SpectralOperator op(sig);
    std::vector<double> xv(op.size());
    for (auto& v : xv) v = g(rng);
    const SpectralVector x(xv);
    const double q = (s % 3 == 0) ? 0.5 : (s % 3 == 1 ? 1.0 : 2.0);
    const auto phi = IndexFunction::holder(q);
    std::vector<double> ph(op.size());
    double rep = 0.0;
    for (std::size_t i = 0; i < ph.size(); ++i) {
      ph[i] = phi(op.lambda()[i]);
      rep += (xv[i] / ph[i]) * (xv[i] / ph[i]);
    }
    const double radius = 1.2 * u(rng) * std::sqrt(rep);
    const auto kkt = distance_function(op, x, phi, radius);
    const double lb = distance_dual_bound(xv, ph, radius);
    const double pg = distance_projected_gradient(xv, ph, radius);
    const double rnd = distance_random_feasible(xv, ph, radius, 100000, seed + s);
    const double gap = std::abs(kkt.d - lb);
    worst_gap = std::max(worst_gap, gap);
    const bool feasible = kkt.xi.norm() <= radius * (1.0 + 1e-12) + 1e-300;
    if (gap > 1e-6 || pg < kkt.d - 1e-6 || rnd < kkt.d - 1e-6 || !feasible) ++mismatches;
  }

  // (b) profile slopes on exponential spectra
  const auto op = make_operator({DecayKind::exponential, 0.05, 400});
  const auto phi = IndexFunction::holder(1.0);
  std::string slopes;
  bool slope_ok = true;
  for (double nu : {0.25, 0.5}) {
    const auto x = make_solution_from_profile(op, {IndexFunction::holder(2.0 * nu), 1.0});
    // radii whose optimal split Lambda ~ R^(1/(nu-1)) stays inside [1e-14, 1e-3]
    const double r_lo = std::pow(1e-3, nu - 1.0), r_hi = std::pow(1e-14, nu - 1.0);
    const auto radii = log_grid(r_lo, r_hi, 10);
    const auto prof = distance_profile(op, x, phi, radii);
    const double target = -nu / (1.0 - nu);
    const bool hit = prof.fit && std::abs(prof.fit->slope - target) <= 0.05 && prof.non_increasing;
    slope_ok = slope_ok && hit;
    slopes += " nu=" + fmt(nu) + " slope=" + (prof.fit ? fmt(prof.fit->slope, 4) : "none") + " (target " +
              fmt(target, 4) + ")";
    const json params{{"criterion", 8}, {"gamma", 0.05}, {"n", 400}, {"nu", nu}, {"phi", "holder:1"}};
    std::ostringstream csv;
    write_distance_csv(csv, prof, csv_tag(params));
    out.files.push_back({"distance_nu" + fmt(nu) + ".csv", csv.str()});
  }

  // (c) error bound with A from the qualification check
  const auto pop = make_operator({DecayKind::polynomial, 1.0, 2000});
  const auto px = make_solution_from_profile(pop, {IndexFunction::holder(1.0), 1.0});
  const auto alphas = log_grid(1e-8, 1.0, 10);
  std::vector<SpectralVector> xis{SpectralVector::zeros(pop.size())};
  for (double a : alphas) xis.push_back(xi_tail(pop, px, phi, a));
  for (double r : log_grid(1.0, 1e4, 4)) xis.push_back(distance_function(pop, px, phi, r).xi);
  for (std::uint64_t s = 0; s < 8; ++s) xis.push_back(unit_random(pop.size(), seed + 500 + s));
  const auto bound = distance_error_bound_check(pop, px, FilterFamily::tikhonov(), phi, xis, alphas);

  out.passed = mismatches == 0 && slope_ok && bound.pass();
  out.detail = "oracle mismatches " + std::to_string(mismatches) + "/100 (max |d - dual bound|=" + fmt(worst_gap, 3) +
               ");" + slopes + "; error bound violations " + std::to_string(bound.violations) + "/" +
               std::to_string(bound.pairs_checked) + " with A=" + fmt(bound.a_hat, 6);
  out.files.push_back(json_file("error_bound.json", to_json(bound), json{{"criterion", 8}, {"seed", seed}}));
}

struct Spec {
  int id;
  const char* name;
  double limit;
  void (*run)(CriterionResult&, std::uint64_t);
};

void determinism(CriterionResult& out, std::uint64_t seed);

const Spec kCriteria[] = {
    {1, "generator validation", 1.0, generator_validation},
    {2, "exact-data holder equivalence", 15.0, holder_equivalence},
    {3, "logarithmic equivalence", 5.0, log_equivalence},
    {4, "noisy bracket", 10.0, noisy_bracket},
    {5, "noisy rate transfer", 10.0, noisy_transfer},
    {6, "variational inequality", 5.0, variational},
    {7, "ssc counterexample", 5.0, ssc_counterexample},
    {8, "distance function", 10.0, distance},
    {9, "determinism", 0.0, determinism},
};

std::vector<OutputFile> numeric_outputs(std::uint64_t seed) {
  std::vector<OutputFile> files;
  json list = json::array();
  for (const auto& c : run_numeric_criteria(seed)) {
    list.push_back(json{{"id", c.id}, {"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    for (const auto& f : c.files) files.push_back({"criterion" + std::to_string(c.id) + "_" + f.name, f.content});
  }
  files.push_back(json_file("acceptance.json", json{{"criteria", list}, {"seed", seed}}, json{{"seed", seed}}));
  return files;
}

std::vector<std::pair<std::string, std::string>> read_dir(const std::filesystem::path& dir) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    std::ifstream in(e.path(), std::ios::binary);
    out.emplace_back(e.path().filename().string(),
                     std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()));
  }
  std::sort(out.begin(), out.end());
  return out;
}

void determinism(CriterionResult& out, std::uint64_t seed) {
  namespace fs = std::filesystem;
  const fs::path base = fs::temp_directory_path() / ("specreg-determinism-" + std::to_string(seed) + "-" +
                                                     std::to_string(Clock::now().time_since_epoch().count()));
  const fs::path a = base / "a", b = base / "b";
  write_outputs(a, numeric_outputs(seed));
  write_outputs(b, numeric_outputs(seed));
  const auto da = read_dir(a), db = read_dir(b);
  std::size_t differing = 0;
  for (std::size_t i = 0; i < std::max(da.size(), db.size()); ++i) {
    if (i >= da.size() || i >= db.size() || da[i] != db[i]) ++differing;
  }
  std::error_code ec;
  fs::remove_all(base, ec);
  out.passed = differing == 0 && !da.empty();
  out.detail = std::to_string(da.size()) + " files per run, " + std::to_string(differing) + " differ";
}

}  // namespace

std::string CriterionResult::line() const {
  std::ostringstream os;
  os << (ok() ? "[PASS] " : "[FAIL] ") << id << ' ' << name << ": " << detail;
  if (!within_time) os << " [runtime " << fmt(seconds, 3) << " s exceeds " << fmt(limit_seconds) << " s]";
  os << " (" << fmt(seconds, 3) << " s)";
  if (!supplementary.empty()) os << "\n       note: " << supplementary;
  return os.str();
}

int criterion_count() noexcept { return static_cast<int>(std::size(kCriteria)); }

CriterionResult run_criterion(int id, std::uint64_t seed) {
  if (id < 1 || id > criterion_count()) throw Error(Errc::out_of_range, "no criterion " + std::to_string(id));
  const auto& spec = kCriteria[id - 1];
  CriterionResult r;
  r.id = spec.id;
  r.name = spec.name;
  r.limit_seconds = spec.limit;
  const auto t0 = Clock::now();
  try {
    spec.run(r, seed);
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = std::string("error: ") + e.what();
  }
  r.seconds = elapsed(t0);
  r.within_time = r.within_time && (!kEnforceTime || spec.limit <= 0.0 || r.seconds < spec.limit);
  return r;
}

std::vector<CriterionResult> run_numeric_criteria(std::uint64_t seed) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= 8; ++id) out.push_back(run_criterion(id, seed));
  return out;
}

}  // namespace specreg::app
