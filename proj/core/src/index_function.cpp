#include "specreg/index_function.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "specreg/error.hpp"

namespace specreg {
namespace {

std::string format_number(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

double parse_number(std::string_view text, std::string_view what) {
  std::string s(text);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw Error(Errc::parse_error, "cannot parse " + std::string(what) + " from '" + s + "'");
  }
  if (used != s.size()) {
    throw Error(Errc::parse_error, "trailing characters in " + std::string(what) + " '" + s + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      parts.push_back(s.substr(start));
      break;
    }
    parts.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
  return parts;
}

}  // namespace

IndexFunction IndexFunction::holder(double q) {
  if (!(q > 0.0) || !std::isfinite(q)) {
    throw Error(Errc::invalid_argument, "holder exponent must be positive");
  }
  IndexFunction f;
  f.kind_ = Kind::holder;
  f.exponent_ = q;
  f.cap_ = std::numeric_limits<double>::infinity();
  f.name_ = "holder:" + format_number(q);
  return f;
}

IndexFunction IndexFunction::logarithmic(double nu) {
  return logarithmic(nu, std::exp(-(1.0 + nu)));
}

IndexFunction IndexFunction::logarithmic(double nu, double cap) {
  if (!(nu > 0.0) || !std::isfinite(nu)) {
    throw Error(Errc::invalid_argument, "logarithmic exponent must be positive");
  }
  if (!(cap > 0.0 && cap < 1.0)) {
    throw Error(Errc::invalid_argument, "logarithmic cap must lie in (0, 1)");
  }
  IndexFunction f;
  f.kind_ = Kind::logarithmic;
  f.exponent_ = nu;
  f.cap_ = cap;
  f.cap_value_ = std::pow(std::abs(std::log(cap)), -nu);
  f.name_ = "log:" + format_number(nu) + ":" + format_number(cap);
  return f;
}

IndexFunction IndexFunction::logarithmic_qualification(double nu, double mu) {
  if (!(mu > 0.0)) throw Error(Errc::invalid_argument, "mu must be positive");
  return logarithmic(nu, std::exp(-nu / mu));
}

IndexFunction IndexFunction::tabulated(std::vector<double> lambda, std::vector<double> phi) {
  if (lambda.empty() || lambda.size() != phi.size()) {
    throw Error(Errc::invalid_argument, "tabulated index function needs matching, non-empty knots");
  }
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    if (!std::isfinite(lambda[i]) || !std::isfinite(phi[i]) || lambda[i] < 0.0 || phi[i] < 0.0) {
      throw Error(Errc::invalid_argument, "tabulated knots must be finite and non-negative");
    }
    if (i > 0 && !(lambda[i] > lambda[i - 1])) {
      throw Error(Errc::invalid_argument, "tabulated lambda knots must be strictly increasing");
    }
    if (i > 0 && phi[i] < phi[i - 1]) {
      throw Error(Errc::invalid_argument, "tabulated phi values must be non-decreasing");
    }
  }
  IndexFunction f;
  f.kind_ = Kind::tabulated;
  f.exponent_ = 0.0;
  f.cap_ = std::numeric_limits<double>::infinity();
  f.knot_lambda_ = std::move(lambda);
  f.knot_phi_ = std::move(phi);
  f.name_ = "table:" + std::to_string(f.knot_lambda_.size()) + "-knots";
  return f;
}

IndexFunction IndexFunction::parse(std::string_view spec) {
  const auto parts = split(spec, ':');
  const std::string_view head = parts.front();
  if (head == "holder" && parts.size() == 2) {
    return holder(parse_number(parts[1], "holder exponent"));
  }
  if (head == "log" && (parts.size() == 2 || parts.size() == 3)) {
    const double nu = parse_number(parts[1], "log exponent");
    if (parts.size() == 3) return logarithmic(nu, parse_number(parts[2], "log cap"));
    return logarithmic(nu);
  }
  if (head == "table" && parts.size() >= 2) {
    const std::string path(spec.substr(6));
    std::ifstream in(path);
    if (!in) throw Error(Errc::parse_error, "cannot open index function table '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) throw Error(Errc::parse_error, "empty table '" + path + "'");
    if (line.rfind("lambda,phi", 0) != 0) {
      throw Error(Errc::parse_error, "table '" + path + "' must start with header lambda,phi");
    }
    std::vector<double> lambda, phi;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      const auto cells = split(line, ',');
      if (cells.size() != 2) throw Error(Errc::parse_error, "bad table row '" + line + "'");
      lambda.push_back(parse_number(cells[0], "table lambda"));
      phi.push_back(parse_number(cells[1], "table phi"));
    }
    auto f = tabulated(std::move(lambda), std::move(phi));
    f.name_ = "table:" + path;
    return f;
  }
  throw Error(Errc::unknown_name, "unknown index function '" + std::string(spec) + "'");
}

double IndexFunction::operator()(double lambda) const {
  switch (kind_) {
    case Kind::holder:
      return lambda <= 0.0 ? 0.0 : std::pow(lambda, exponent_);
    case Kind::logarithmic:
      if (lambda <= 0.0) return 0.0;
      if (lambda >= cap_) return cap_value_;
      return std::pow(std::abs(std::log(lambda)), -exponent_);
    case Kind::tabulated: {
      if (lambda <= knot_lambda_.front()) return knot_phi_.front();
      if (lambda >= knot_lambda_.back()) return knot_phi_.back();
      const auto it = std::upper_bound(knot_lambda_.begin(), knot_lambda_.end(), lambda);
      const auto hi = static_cast<std::size_t>(it - knot_lambda_.begin());
      const std::size_t lo = hi - 1;
      const double t = (lambda - knot_lambda_[lo]) / (knot_lambda_[hi] - knot_lambda_[lo]);
      return knot_phi_[lo] + t * (knot_phi_[hi] - knot_phi_[lo]);
    }
  }
  return 0.0;
}

}  // namespace specreg
