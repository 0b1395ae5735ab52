#include "specreg/serialization.hpp"

#include <cmath>
#include <ostream>

namespace specreg {
namespace {

using nlohmann::json;

json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json num(const std::optional<double>& v) { return v ? num(*v) : json(nullptr); }

void comment_line(std::ostream& out, std::string_view comment) {
  if (!comment.empty()) out << "# " << comment << '\n';
}

// CSV cell: empty for missing values, round-trip precision otherwise.
void cell(std::ostream& out, std::optional<double> v) {
  if (v && std::isfinite(*v)) {
    out << *v;
  } else if (v && std::isinf(*v)) {
    out << (*v > 0 ? "inf" : "-inf");
  }
}

std::string_view model_name(RateModel m) { return m == RateModel::power ? "power" : "logarithmic"; }

}  // namespace

json to_json(const Witness& w) {
  return json{{"alpha", num(w.alpha)}, {"lambda", num(w.lambda)}, {"value", num(w.value)}, {"neighbor", num(w.neighbor)}};
}

json to_json(const ConditionResult& c) {
  return json{{"pass", c.pass}, {"witness", c.witness ? to_json(*c.witness) : json(nullptr)}, {"reason", c.reason}};
}

json to_json(const GridRegion& g) {
  return json{{"alpha_min", num(g.alpha_min)},   {"alpha_max", num(g.alpha_max)},
              {"lambda_min", num(g.lambda_min)}, {"lambda_max", num(g.lambda_max)},
              {"alpha_points", g.alpha_points},  {"lambda_points", g.lambda_points}};
}

json to_json(const GeneratorReport& r) {
  return json{{"family", r.family},
              {"rho_hat", num(r.rho_hat)},
              {"rho_witness", to_json(r.rho_witness)},
              {"rho_tilde_hat", num(r.rho_tilde_hat)},
              {"rho_tilde_witness", to_json(r.rho_tilde_witness)},
              {"cond_i", to_json(r.cond_i)},
              {"cond_ii", to_json(r.cond_ii)},
              {"cond_iii", to_json(r.cond_iii)},
              {"cond_iv", to_json(r.cond_iv)},
              {"region", to_json(r.region)},
              {"all_pass", r.all_pass()}};
}

json to_json(const QualificationReport& r) {
  return json{{"mu", num(r.mu)},
              {"a_hat", num(r.a_hat)},
              {"witness", to_json(r.witness)},
              {"a_hat_below_alpha", num(r.a_hat_below_alpha)},
              {"a_hat_above_alpha", num(r.a_hat_above_alpha)},
              {"a_declared", num(r.a_declared)},
              {"within_declared", r.within_declared}};
}

json to_json(const RatioConditionReport& r) {
  auto rw = [](const RatioWitness& w) {
    return json{{"alpha", num(w.alpha)}, {"beta", num(w.beta)}, {"lambda", num(w.lambda)}, {"value", num(w.value)}};
  };
  json table = json::array();
  for (const auto& e : r.g_table) {
    table.push_back(json{{"gamma", num(e.gamma)}, {"g", num(e.g)}, {"alpha_at_max", num(e.alpha_at_max)}});
  }
  return json{{"c_upper", num(r.c_upper)},
              {"upper_witness", r.c_upper ? rw(r.upper_witness) : json(nullptr)},
              {"c_lower", num(r.c_lower)},
              {"lower_witness", r.c_lower ? rw(r.lower_witness) : json(nullptr)},
              {"triples_checked", r.triples_checked},
              {"g_table", std::move(table)},
              {"quad_bound_c", num(r.quad_bound_c)}};
}

json to_json(const LinearFit& f) {
  return json{{"slope", num(f.slope)}, {"intercept", num(f.intercept)}, {"r2", num(f.r_squared)}, {"points", f.points}};
}

json to_json(const RateFit& f) {
  json j{{"model", model_name(f.model)},
         {"slope_or_spread", num(f.slope_or_spread())},
         {"window", json{{"alpha_min", num(f.window.alpha_min)}, {"alpha_max", num(f.window.alpha_max)}}},
         {"points", f.points}};
  if (f.model == RateModel::power) {
    j["slope"] = num(f.slope);
    j["r2"] = num(f.r_squared);
  } else {
    j["nu"] = num(f.nu);
    j["spread"] = num(f.spread);
    j["ratio_min"] = num(f.ratio_min);
    j["ratio_max"] = num(f.ratio_max);
    j["r2"] = nullptr;
  }
  return j;
}

json to_json(const NoisyRateReport& r) {
  return json{{"delta", num(r.delta)},
              {"rho_hat", num(r.rho_hat)},
              {"rho_tilde_hat", num(r.rho_tilde_hat)},
              {"c0", num(r.c0)},
              {"c1", num(r.c1)},
              {"alpha_delta", num(r.alpha_delta)},
              {"a_delta", num(r.a_delta)},
              {"band_size", r.band_size},
              {"fallback_used", r.fallback_used},
              {"lower", num(r.lower)},
              {"upper", num(r.upper)},
              {"adversarial", num(r.adversarial_value)},
              {"adversarial_alpha", num(r.adversarial_alpha)},
              {"trivial", r.trivial},
              {"epsilon", num(r.epsilon)}};
}

json to_json(const VariationalReport& r) {
  const auto& t = r.test_set;
  return json{{"nu", num(r.nu)},
              {"c_vi", num(r.c_vi)},
              {"c_vi_kind", r.c_vi_kind},
              {"c_vi_argmax", r.c_vi_argmax},
              {"c_spec", num(r.c_spec)},
              {"converse_bound", num(r.converse_bound)},
              {"test_set", json{{"basis", t.basis},
                                {"head", t.head},
                                {"tail", t.tail},
                                {"full", t.full},
                                {"random", t.random},
                                {"seed", t.seed},
                                {"total", t.total()}}}};
}

json to_json(const SscWitness& w) {
  json rows = json::array();
  for (std::size_t k = 0; k < w.dims.size(); ++k) {
    rows.push_back(json{{"n", w.dims[k]},
                        {"witness_norm_sq", num(w.witness_norm_sq[k])},
                        {"log_phi_ratio", num(w.log_phi_ratio[k])}});
  }
  return json{{"nu", num(w.nu)}, {"rows", std::move(rows)}};
}

json to_json(const DistanceProfile& p) {
  return json{{"rows", p.rows.size()},
              {"fit", p.fit ? to_json(*p.fit) : json(nullptr)},
              {"non_increasing", p.non_increasing},
              {"convex", p.convex}};
}

json to_json(const DistanceBoundReport& r) {
  return json{{"a_hat", num(r.a_hat)},           {"pairs_checked", r.pairs_checked},
              {"violations", r.violations},      {"max_ratio", num(r.max_ratio)},
              {"worst_alpha", num(r.worst_alpha)}, {"worst_sample", r.worst_sample},
              {"pass", r.pass()}};
}

void write_error_curve_csv(std::ostream& out, const ErrorCurve& curve, std::string_view comment) {
  const auto old = out.precision(17);
  comment_line(out, comment);
  out << "alpha,err_sq\n";
  for (std::size_t i = 0; i < curve.size(); ++i) out << curve.alpha[i] << ',' << curve.err_sq[i] << '\n';
  out.precision(old);
}

void write_noisy_csv(std::ostream& out, std::span<const NoisyRateReport> rows, std::string_view comment) {
  const auto old = out.precision(17);
  comment_line(out, comment);
  out << "delta,alpha_delta,lower,adversarial,upper\n";
  for (const auto& r : rows) {
    cell(out, r.delta);
    out << ',';
    cell(out, r.alpha_delta);
    out << ',';
    cell(out, r.lower);
    out << ',';
    cell(out, r.adversarial_value);
    out << ',';
    cell(out, r.upper);
    out << '\n';
  }
  out.precision(old);
}

void write_distance_csv(std::ostream& out, const DistanceProfile& profile, std::string_view comment) {
  const auto old = out.precision(17);
  comment_line(out, comment);
  out << "R,d,mu\n";
  for (const auto& r : profile.rows) {
    cell(out, r.radius);
    out << ',';
    cell(out, r.d);
    out << ',';
    cell(out, r.mu);
    out << '\n';
  }
  out.precision(old);
}

}  // namespace specreg
