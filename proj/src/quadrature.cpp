#include "fbm/quadrature.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <tuple>

#include "fbm/errors.hpp"

namespace fbm {

namespace {

using VecL = Eigen::Matrix<long double, Eigen::Dynamic, 1>;
using MatL = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;

}  // namespace

// Golub-Welsch on the Jacobi matrix of (1-x)^b (1+x)^a, mapped to [0,1].
QuadratureRule gauss_jacobi(int n, double a, double b) {
  if (n < 1) throw DomainError("gauss_jacobi: need at least one node");
  if (!(a > -1.0) || !(b > -1.0)) {
    std::ostringstream os;
    os << "gauss_jacobi: exponents must exceed -1 (a=" << a << ", b=" << b << ")";
    throw DomainError(os.str());
  }
  const long double al = b;  // exponent at x = +1, i.e. v = 1
  const long double be = a;  // exponent at x = -1, i.e. v = 0
  const long double s = al + be;

  VecL diag(n);
  VecL sub(n > 1 ? n - 1 : 1);
  diag(0) = (be - al) / (s + 2.0L);
  for (int k = 1; k < n; ++k) {
    const long double m = 2.0L * k + s;
    diag(k) = (be * be - al * al) / (m * (m + 2.0L));
  }
  for (int k = 1; k < n; ++k) {
    const long double m = 2.0L * k + s;
    long double e2;
    if (k == 1) {
      e2 = 4.0L * (1.0L + al) * (1.0L + be) / ((2.0L + s) * (2.0L + s) * (3.0L + s));
    } else {
      e2 = 4.0L * k * (k + al) * (k + be) * (k + s) / (m * m * (m + 1.0L) * (m - 1.0L));
    }
    sub(k - 1) = std::sqrt(e2);
  }

  // total mass of v^a (1-v)^b on [0,1]
  const long double mass = std::exp(std::lgamma(static_cast<long double>(a) + 1.0L) +
                                    std::lgamma(static_cast<long double>(b) + 1.0L) -
                                    std::lgamma(s + 2.0L));

  QuadratureRule rule;
  rule.kind = (a == 0.0 && b == 0.0) ? RuleKind::gauss_legendre : RuleKind::gauss_jacobi;
  rule.a = a;
  rule.b = b;
  rule.nodes.resize(n);
  rule.complement.resize(n);
  rule.weights.resize(n);

  if (n == 1) {
    const long double x = diag(0);
    rule.nodes[0] = static_cast<double>((1.0L + x) / 2.0L);
    rule.complement[0] = static_cast<double>((1.0L - x) / 2.0L);
    rule.weights[0] = static_cast<double>(mass);
    return rule;
  }

  Eigen::SelfAdjointEigenSolver<MatL> es;
  es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericError("gauss_jacobi: eigen solver failed");
  const VecL& x = es.eigenvalues();
  for (int i = 0; i < n; ++i) {
    // Christoffel weight from the orthonormal three-term recurrence
    long double p_prev = 0.0L, p = 1.0L, norm = 1.0L;
    for (int k = 0; k + 1 < n; ++k) {
      const long double e_prev = k > 0 ? sub(k - 1) : 0.0L;
      const long double p_next = ((x(i) - diag(k)) * p - e_prev * p_prev) / sub(k);
      p_prev = p;
      p = p_next;
      norm += p * p;
    }
    rule.nodes[i] = static_cast<double>((1.0L + x(i)) / 2.0L);
    rule.complement[i] = static_cast<double>((1.0L - x(i)) / 2.0L);
    rule.weights[i] = static_cast<double>(mass / norm);
  }
  return rule;
}

QuadratureRule gauss_legendre(int n) { return gauss_jacobi(n, 0.0, 0.0); }

QuadratureRule graded_trapezoid(int levels_per_unit, double s_max) {
  if (levels_per_unit < 1 || !(s_max > 0)) throw DomainError("graded_trapezoid: bad parameters");
  const long double h = 1.0L / levels_per_unit;
  const int m = static_cast<int>(std::floor(s_max * levels_per_unit));
  constexpr long double kPi = 3.141592653589793238462643383279502884L;
  QuadratureRule rule;
  rule.kind = RuleKind::graded_trapezoid;
  for (int j = -m; j <= m; ++j) {
    const long double sj = j * h;
    const long double u = kPi * std::sinh(sj);
    const long double v = 1.0L / (1.0L + std::exp(-u));
    const long double c = 1.0L / (1.0L + std::exp(u));
    const long double w = h * kPi * std::cosh(sj) * v * c;
    if (v >= 1.0L || c <= 0.0L || w <= 0.0L) continue;
    rule.nodes.push_back(static_cast<double>(v));
    rule.complement.push_back(static_cast<double>(c));
    rule.weights.push_back(static_cast<double>(w));
  }
  return rule;
}

std::shared_ptr<const QuadratureRule> cached_gauss_jacobi(int n, double a, double b) {
  static std::mutex mutex;
  static std::map<std::tuple<int, double, double>, std::shared_ptr<const QuadratureRule>> cache;
  const auto key = std::make_tuple(n, a, b);
  {
    std::lock_guard lock(mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto rule = std::make_shared<const QuadratureRule>(gauss_jacobi(n, a, b));
  std::lock_guard lock(mutex);
  return cache.emplace(key, std::move(rule)).first->second;
}

double integrate_layered(double a, double b, double L, double layer, const RealFn& g,
                         int panel_nodes, double q) {
  if (!(L > 0)) return 0.0;
  if (!(q > 0)) throw DomainError("integrate_layered: power must be positive");
  const int n = std::max(panel_nodes, 4);
  const double top = (layer > 0) ? std::min(layer, 0.5 * L) : 0.5 * L;
  const double first = std::ldexp(top, -20);

  double total = 0.0;
  // [0, first]: w = first * v^(1/q) absorbs the endpoint power and makes
  // functions of w^q analytic in v
  {
    const double e = (a + 1.0) / q - 1.0;
    const auto rule = cached_gauss_jacobi(n, e, 0.0);
    double s = 0.0;
    for (std::size_t i = 0; i < rule->size(); ++i) {
      const double w = first * std::pow(rule->nodes[i], 1.0 / q);
      s += rule->weights[i] * std::pow(L - w, b) * g(w);
    }
    total += std::pow(first, a + 1.0) / q * s;
  }
  // geometric panels up to L/2
  double lo = first;
  const auto gl = cached_gauss_jacobi(n, 0.0, 0.0);
  while (2.0 * lo < 0.5 * L) {
    const double hi = 2.0 * lo;
    const double len = hi - lo;
    double s = 0.0;
    for (std::size_t i = 0; i < gl->size(); ++i) {
      const double w = lo + len * gl->nodes[i];
      s += gl->weights[i] * std::pow(w, a) * std::pow(L - w, b) * g(w);
    }
    total += len * s;
    lo = hi;
  }
  // [lo, L]: far-end power absorbed
  {
    const auto rule = cached_gauss_jacobi(2 * n, 0.0, b);
    const double len = L - lo;
    double s = 0.0;
    for (std::size_t i = 0; i < rule->size(); ++i) {
      const double w = lo + len * rule->nodes[i];
      s += rule->weights[i] * std::pow(w, a) * g(w);
    }
    total += std::pow(len, b + 1.0) * s;
  }
  return total;
}

}  // namespace fbm
