#include "fbm/fracops.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "fbm/errors.hpp"
#include "fbm/specfun.hpp"

namespace fbm {

namespace {

void require_positive(double v, const char* what) {
  if (!(v > 0)) {
    std::ostringstream os;
    os << what << " must be positive (got " << v << ")";
    throw DomainError(os.str());
  }
}

// Central differences in L = log t: first and second derivative, fourth order.
struct LogDerivatives {
  double d1 = 0.0;
  double d2 = 0.0;
};

LogDerivatives log_derivatives(const RealFn& f, double t, double h) {
  std::array<double, 5> v{};
  for (int j = -2; j <= 2; ++j) v[j + 2] = f(t * std::exp(j * h));
  LogDerivatives out;
  out.d1 = (-v[4] + 8.0 * v[3] - 8.0 * v[1] + v[0]) / (12.0 * h);
  out.d2 = (-v[4] + 16.0 * v[3] - 30.0 * v[2] + 16.0 * v[1] - v[0]) / (12.0 * h * h);
  return out;
}

}  // namespace

OperatorParams OperatorParams::make(double alpha1, double theta, double alpha2, double beta2,
                                    double mu) {
  OperatorParams op;
  op.alpha1 = alpha1;
  op.theta = theta;
  op.alpha2 = alpha2;
  op.beta2 = beta2;
  op.mu = mu;
  op.p = 1.0 - theta;
  op.gamma2 = beta2 + mu * (2.0 - beta2);
  op.delta2 = beta2 + mu * (alpha2 - beta2);
  op.validate();
  return op;
}

void OperatorParams::validate() const {
  std::ostringstream os;
  if (!(alpha1 > 0 && alpha1 <= 1)) os << "alpha1 must lie in (0,1]; ";
  if (!(theta < 1)) os << "theta must be < 1; ";
  if (!(alpha2 > 1 && alpha2 <= 2)) os << "alpha2 must lie in (1,2]; ";
  if (!(beta2 > 1 && beta2 <= 2)) os << "beta2 must lie in (1,2]; ";
  if (!(mu >= 0 && mu <= 1)) os << "mu must lie in [0,1]; ";
  const std::string msg = os.str();
  if (!msg.empty()) throw DomainError("operator parameters: " + msg);
  const double tol = 1e-15;
  if (std::fabs(p - (1.0 - theta)) > tol ||
      std::fabs(gamma2 - (beta2 + mu * (2.0 - beta2))) > tol ||
      std::fabs(delta2 - (beta2 + mu * (alpha2 - beta2))) > tol) {
    throw DomainError("operator parameters: derived fields inconsistent");
  }
}

double rl_integral_right(double sigma, const RealFn& g, double t, const QuadratureRule& rule) {
  require_positive(sigma, "rl_integral_right: order");
  if (!(t < 0)) throw DomainError("rl_integral_right: t must be negative");
  // s = t + (-t) v, so s - t = (-t) v and -s = (-t)(1 - v)
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double v = rule.nodes[i];
    const double c = rule.complement[i];
    double f = g(t * c);
    if (sigma - 1.0 != rule.a) f *= std::pow(v, sigma - 1.0 - rule.a);
    if (rule.b != 0.0) f *= std::pow(c, -rule.b);
    sum += rule.weights[i] * f;
  }
  return std::pow(-t, sigma) * rgamma(sigma) * sum;
}

double rl_integral_right(double sigma, const RealFn& g, double t, KernelQuadrature q) {
  require_positive(sigma, "rl_integral_right: order");
  const auto rule = cached_gauss_jacobi(q.nodes, sigma - 1.0, q.end_exponent);
  return rl_integral_right(sigma, g, t, *rule);
}

double ek_integral(double gamma, double delta, double beta, const RealFn& g, double t,
                   const QuadratureRule& rule) {
  require_positive(delta, "ek_integral: delta");
  require_positive(beta, "ek_integral: beta");
  require_positive(t, "ek_integral: t");
  // v = (tau/t)^beta: (1/Gamma(delta)) * int_0^1 (1-v)^(delta-1) v^gamma g(t v^(1/beta)) dv
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double v = rule.nodes[i];
    double f = g(t * std::pow(v, 1.0 / beta));
    if (gamma != rule.a) f *= std::pow(v, gamma - rule.a);
    if (delta - 1.0 != rule.b) f *= std::pow(rule.complement[i], delta - 1.0 - rule.b);
    sum += rule.weights[i] * f;
  }
  return rgamma(delta) * sum;
}

double ek_integral(double gamma, double delta, double beta, const RealFn& g, double t,
                   KernelQuadrature q) {
  require_positive(delta, "ek_integral: delta");
  require_positive(beta, "ek_integral: beta");
  const auto rule = cached_gauss_jacobi(q.nodes, gamma + q.end_exponent / beta, delta - 1.0);
  return ek_integral(gamma, delta, beta, g, t, *rule);
}

double ek_derivative(double gamma, double delta, double beta, const RealFn& g, double t,
                     KernelQuadrature q) {
  require_positive(delta, "ek_derivative: delta");
  require_positive(beta, "ek_derivative: beta");
  require_positive(t, "ek_derivative: t");
  const int n = static_cast<int>(std::ceil(delta - 1e-14));
  if (n > 2) throw DomainError("ek_derivative: only delta <= 2 is supported");
  const double inner_order = n - delta;
  RealFn inner;
  if (inner_order <= 1e-14) {
    inner = g;
  } else {
    inner = [&](double s) { return ek_integral(gamma + delta, inner_order, beta, g, s, q); };
  }

  // prod (A_j + D/beta) in D = d/dlog t, expanded
  double c0 = 1.0, c1 = 0.0, c2 = 0.0;
  for (int j = 1; j <= n; ++j) {
    const double a = gamma + j;
    const double n2 = c2 * a + c1 / beta;
    const double n1 = c1 * a + c0 / beta;
    c0 *= a;
    c1 = n1;
    c2 = n2;
  }

  const double h = 2e-3;
  const double f0 = inner(t);
  const LogDerivatives fine = log_derivatives(inner, t, h);
  const LogDerivatives coarse = log_derivatives(inner, t, 2.0 * h);
  const double value = c0 * f0 + c1 * fine.d1 + c2 * fine.d2;
  const double alt = c0 * f0 + c1 * coarse.d1 + c2 * coarse.d2;
  const double scale = std::fabs(value) + (std::fabs(c0) + std::fabs(c1) + std::fabs(c2)) * std::fabs(f0);
  if (!std::isfinite(value) || std::fabs(value - alt) > 1e-2 * scale + 1e-300) {
    std::ostringstream os;
    os << "ek_derivative: finite differences did not settle at t=" << t << " (" << value << " vs "
       << alt << ")";
    throw NumericError(os.str());
  }
  return value;
}

double hyper_bessel_caputo(const OperatorParams& op, const RealFn& u, double u0, double t,
                           KernelQuadrature q) {
  require_positive(t, "hyper_bessel_caputo: t");
  const double a = op.alpha1;
  const double p = op.p;
  const RealFn shifted = [&](double s) { return u(s) - u0; };
  const double d = ek_derivative(-a, a, p, shifted, t, q);
  return std::pow(p, a) * std::pow(t, -a * p) * d;
}

double bi_ordinal_hilfer(const OperatorParams& op, const RealFn& u, double t, HilferQuadrature q) {
  if (!(t < 0)) throw DomainError("bi_ordinal_hilfer: t must be negative");
  const double nu = op.nu();
  const double kappa = op.kappa();

  RealFn inner;
  if (nu > 0) {
    const auto rule = cached_gauss_jacobi(q.inner.nodes, nu - 1.0, q.inner.end_exponent);
    inner = [rule, nu, &u](double s) { return rl_integral_right(nu, u, s, *rule); };
  } else {
    inner = u;
  }

  const auto second = [&](double s) {
    const double h = 2e-2 * std::fabs(s);
    if (!(std::fabs(s) > 1e-280) || s + h == s || !(s + h < 0)) {
      std::ostringstream os;
      os << "bi_ordinal_hilfer: difference step underflows at s=" << s;
      throw NumericError(os.str());
    }
    const double f0 = inner(s);
    const auto sd = [&](double step) {
      return (inner(s + step) - 2.0 * f0 + inner(s - step)) / (step * step);
    };
    return (4.0 * sd(0.5 * h) - sd(h)) / 3.0;
  };

  if (kappa <= 0) return second(t);
  return rl_integral_right(kappa, second, t, q.outer);
}

}  // namespace fbm
