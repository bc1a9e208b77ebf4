#include "fbm/forcing.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <utility>

#include "fbm/errors.hpp"

namespace fbm {

Polynomial::Polynomial(std::vector<double> coeffs) : c_(std::move(coeffs)) {
  while (c_.size() > 1 && c_.back() == 0.0) c_.pop_back();
}

Polynomial Polynomial::monomial(int degree, double c) {
  std::vector<double> v(static_cast<std::size_t>(degree) + 1, 0.0);
  v.back() = c;
  return Polynomial(std::move(v));
}

double Polynomial::operator()(double x) const {
  double s = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) s = s * x + *it;
  return s;
}

Polynomial Polynomial::derivative() const {
  if (c_.size() <= 1) return Polynomial({0.0});
  std::vector<double> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = static_cast<double>(i) * c_[i];
  return Polynomial(std::move(d));
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
  if (c_.empty() || other.c_.empty()) return Polynomial();
  std::vector<double> r(c_.size() + other.c_.size() - 1, 0.0);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    for (std::size_t j = 0; j < other.c_.size(); ++j) r[i + j] += c_[i] * other.c_[j];
  }
  return Polynomial(std::move(r));
}

Polynomial Polynomial::operator*(double s) const {
  std::vector<double> r = c_;
  for (double& v : r) v *= s;
  return Polynomial(std::move(r));
}

bool Polynomial::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](double v) { return v == 0.0; });
}

namespace {

std::size_t locate(const std::vector<double>& grid, double v) {
  if (grid.size() < 2) return 0;
  auto it = std::upper_bound(grid.begin(), grid.end(), v);
  std::size_t i = it == grid.begin() ? 0 : static_cast<std::size_t>(it - grid.begin()) - 1;
  return std::min(i, grid.size() - 2);
}

}  // namespace

double TabulatedField::operator()(double x, double t) const {
  if (xs.size() < 2 || ts.size() < 2) throw DomainError("tabulated forcing: grid too small");
  x = std::clamp(x, xs.front(), xs.back());
  t = std::clamp(t, ts.front(), ts.back());
  const std::size_t i = locate(xs, x);
  const std::size_t j = locate(ts, t);
  const double wx = (x - xs[i]) / (xs[i + 1] - xs[i]);
  const double wt = (t - ts[j]) / (ts[j + 1] - ts[j]);
  return (1 - wx) * (1 - wt) * at(i, j) + wx * (1 - wt) * at(i + 1, j) +
         (1 - wx) * wt * at(i, j + 1) + wx * wt * at(i + 1, j + 1);
}

TabulatedField TabulatedField::load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open forcing table '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw ConfigError(path + ": empty file");
  {
    std::string h = line;
    h.erase(std::remove_if(h.begin(), h.end(), [](char c) { return std::isspace(c); }), h.end());
    if (h != "x,t,f") throw ConfigError(path + ":1: expected header 'x,t,f'");
  }
  std::map<std::pair<double, double>, double> samples;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    double x, t, f;
    if (!(row >> x >> t >> f)) {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected three numbers");
    }
    samples[{t, x}] = f;
  }
  TabulatedField tab;
  for (const auto& [key, f] : samples) {
    tab.ts.push_back(key.first);
    tab.xs.push_back(key.second);
  }
  const auto uniq = [](std::vector<double>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };
  uniq(tab.xs);
  uniq(tab.ts);
  if (tab.xs.size() < 2 || tab.ts.size() < 2) throw ConfigError(path + ": need at least a 2x2 grid");
  if (samples.size() != tab.xs.size() * tab.ts.size()) {
    throw ConfigError(path + ": samples do not form a complete rectangular grid");
  }
  tab.values.resize(samples.size());
  for (std::size_t j = 0; j < tab.ts.size(); ++j) {
    for (std::size_t i = 0; i < tab.xs.size(); ++i) {
      tab.values[j * tab.xs.size() + i] = samples.at({tab.ts[j], tab.xs[i]});
    }
  }
  return tab;
}

std::string to_string(HypothesisStatus s) {
  switch (s) {
    case HypothesisStatus::satisfied:
      return "satisfied";
    case HypothesisStatus::violated:
      return "not-satisfied";
    default:
      return "unverifiable";
  }
}

Polynomial builtin_profile() {
  // x^4 (1 - 3x + 3x^2 - x^3)
  return Polynomial({0.0, 0.0, 0.0, 0.0, 1.0, -3.0, 3.0, -1.0});
}

Forcing Forcing::zero() { return Forcing{}; }

Forcing Forcing::separable(Polynomial spatial, Polynomial temporal) {
  Forcing f;
  f.kind = Kind::separable;
  f.spatial = std::move(spatial);
  f.temporal = std::move(temporal);
  if (f.spatial.is_zero() || f.temporal.is_zero()) return Forcing::zero();
  return f;
}

Forcing Forcing::builtin(const Polynomial& q, Polynomial temporal) {
  return separable(builtin_profile() * q, std::move(temporal));
}

Forcing Forcing::tabulated(TabulatedField table) {
  Forcing f;
  f.kind = Kind::tabulated;
  f.table = std::make_shared<const TabulatedField>(std::move(table));
  return f;
}

double Forcing::operator()(double x, double t) const {
  switch (kind) {
    case Kind::zero:
      return 0.0;
    case Kind::separable:
      return spatial(x) * temporal(t);
    default:
      return (*table)(x, t);
  }
}

HypothesisReport Forcing::check_hypotheses() const {
  if (kind == Kind::zero) return {HypothesisStatus::satisfied, "zero forcing"};
  if (kind == Kind::tabulated) return {HypothesisStatus::unverifiable, "tabulated forcing, proceeding"};
  std::ostringstream bad;
  Polynomial d = spatial;
  for (int order = 0; order <= 3; ++order) {
    double scale = 0.0;
    for (double c : d.coeffs()) scale += std::fabs(c);
    const double tol = 1e-12 * std::max(scale, 1e-300);
    if (std::fabs(d(0.0)) > tol) bad << "d^" << order << "f/dx^" << order << "(0)!=0 ";
    if (order <= 2 && std::fabs(d(1.0)) > tol) bad << "d^" << order << "f/dx^" << order << "(1)!=0 ";
    d = d.derivative();
  }
  std::string msg = bad.str();
  if (!msg.empty()) {
    msg.pop_back();
    return {HypothesisStatus::violated, msg};
  }
  return {HypothesisStatus::satisfied, "polynomial profile meets the vanishing conditions"};
}

}  // namespace fbm
