#include "fbm/specfun.hpp"

#include <quadmath.h>

#include <cmath>
#include <algorithm>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <sstream>
#include <utility>
#include <vector>

#include "fbm/errors.hpp"

namespace fbm {

namespace {

using quad = __float128;

const quad kQuadEps = static_cast<quad>(1e-36L);
constexpr long double kPiL = 3.141592653589793238462643383279502884L;

bool is_nonpositive_integer(long double x) {
  if (x > 0) return false;
  const long double r = std::nearbyint(x);
  return std::fabs(x - r) <= 1e-13L * std::max(1.0L, std::fabs(x));
}

// sin(pi x) with exact zeros at the integers.
long double sinpi(long double x) {
  long double r = std::fmod(x, 2.0L);  // (-2, 2)
  if (r > 1.0L) r -= 2.0L;
  if (r < -1.0L) r += 2.0L;
  if (r == 0.0L || std::fabs(r) == 1.0L) return 0.0L;
  if (r > 0.5L) r = 1.0L - r;
  if (r < -0.5L) r = -1.0L - r;
  return std::sin(kPiL * r);
}

long double rgamma_ld(long double x) {
  if (x > 0) {
    if (x > 1754.0L) return 0.0L;
    return 1.0L / std::tgamma(x);
  }
  if (is_nonpositive_integer(x)) return 0.0L;
  // reflection: 1/Gamma(x) = sin(pi x) Gamma(1-x) / pi
  const long double g = std::tgamma(1.0L - x);
  if (!std::isfinite(g)) return std::numeric_limits<long double>::infinity();
  return sinpi(x) * g / kPiL;
}

quad rgamma_q(quad x) {
  if (x <= 0 && is_nonpositive_integer(static_cast<long double>(x))) return 0;
  return 1 / tgammaq(x);
}

// Power-series coefficients 1/Gamma(alpha n + beta), shared between calls.
struct SeriesTable {
  std::vector<quad> q;
  std::vector<long double> ld;
};

const SeriesTable& series_table(double alpha, double beta) {
  static std::shared_mutex mutex;
  static std::map<std::pair<double, double>, std::unique_ptr<SeriesTable>> cache;
  const auto key = std::make_pair(alpha, beta);
  {
    std::shared_lock lock(mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return *it->second;
  }
  // Terms beyond alpha n ~ e*rho + 60 are negligible for rho <= kMLQuadRho.
  const double span = std::exp(1.0) * kMLQuadRho + 70.0 + std::fabs(beta);
  const auto n_max = static_cast<std::size_t>(std::ceil(span / alpha)) + 4;
  auto table = std::make_unique<SeriesTable>();
  table->q.resize(n_max + 1);
  table->ld.resize(n_max + 1);
  for (std::size_t n = 0; n <= n_max; ++n) {
    const quad arg = static_cast<quad>(alpha) * static_cast<quad>(n) + static_cast<quad>(beta);
    table->q[n] = rgamma_q(arg);
    table->ld[n] = static_cast<long double>(table->q[n]);
  }
  std::unique_lock lock(mutex);
  auto [it, inserted] = cache.emplace(key, std::move(table));
  return *it->second;
}

template <class Real>
Real sum_series(const std::vector<Real>& c, Real z, double alpha, long double rho, Real eps) {
  Real sum = 0;
  Real zp = 1;
  Real max_abs = 0;
  for (std::size_t n = 0; n < c.size(); ++n) {
    const Real term = c[n] * zp;
    sum += term;
    const Real mag = term < 0 ? -term : term;
    if (mag > max_abs) max_abs = mag;
    if (static_cast<long double>(alpha) * n > rho + 2 && mag <= eps * max_abs && c[n] != 0) break;
    zp *= z;
  }
  return sum;
}

// -sum_{n>=1} z^{-n} / Gamma(beta - alpha n), truncated near the smallest term.
long double algebraic_tail(double alpha, double beta, long double z, long double rho) {
  const long double zinv = 1.0L / z;
  long double zp = 1.0L;
  long double sum = 0.0L;
  const long double n_opt = std::min<long double>(rho / alpha + 1, 4000.0L);
  int tiny_run = 0;
  for (int n = 1; n <= n_opt; ++n) {
    zp *= zinv;
    const long double x = static_cast<long double>(beta) - static_cast<long double>(alpha) * n;
    if (1.0L - x > 1750.0L) break;
    const long double rg = rgamma_ld(x);
    if (rg == 0.0L) continue;
    const long double term = -zp * rg;
    sum += term;
    if (std::fabs(term) <= 1e-21L * std::fabs(sum)) {
      if (++tiny_run >= 2) break;
    } else {
      tiny_run = 0;
    }
  }
  return sum;
}

double ml_asymptotic(double alpha, double beta, long double z, long double rho) {
  long double value = algebraic_tail(alpha, beta, z, rho);
  if (z > 0) {
    // dominant root zeta = rho
    const long double lead = std::pow(rho, 1.0L - beta) * std::exp(rho) / alpha;
    return static_cast<double>(lead + value);
  }
  if (alpha > 1.0) {
    // conjugate pair zeta = rho exp(+-i pi/alpha)
    const long double th = kPiL / alpha;
    const long double re = rho * std::cos(th);
    if (re > -11000.0L) {
      const long double mag = std::pow(rho, 1.0L - beta) * std::exp(re);
      const long double phase = rho * std::sin(th) + (1.0L - beta) * th;
      value += 2.0L / alpha * mag * std::cos(phase);
    }
  } else if (alpha == 1.0) {
    // single real root zeta = z, averaged over the two branches of zeta^(1-beta)
    const long double mag = std::pow(rho, 1.0L - beta) * std::exp(-rho);
    value += mag * std::cos((1.0L - beta) * kPiL);
  }
  return static_cast<double>(value);
}

long double bessel_series_ld(int nu, long double x) {
  const long double h = x / 2;
  const long double h2 = -h * h;
  long double term = 1.0L;
  for (int j = 1; j <= nu; ++j) term *= h / j;
  long double sum = term;
  long double max_abs = std::fabs(term);
  for (int k = 1; k < 200; ++k) {
    term *= h2 / (static_cast<long double>(k) * (k + nu));
    sum += term;
    max_abs = std::max(max_abs, std::fabs(term));
    if (k > h && std::fabs(term) <= 1e-21L * max_abs) break;
  }
  return sum;
}

quad bessel_series_q(int nu, quad x) {
  const quad h = x / 2;
  const quad h2 = -h * h;
  quad term = 1;
  for (int j = 1; j <= nu; ++j) term *= h / j;
  quad sum = term;
  quad max_abs = fabsq(term);
  for (int k = 1; k < 400; ++k) {
    term *= h2 / (static_cast<quad>(k) * (k + nu));
    sum += term;
    max_abs = fmaxq(max_abs, fabsq(term));
    if (k > h && fabsq(term) <= kQuadEps * max_abs) break;
  }
  return sum;
}

// Hankel expansion for large x.
long double bessel_hankel(int nu, long double x) {
  const long double mu = 4.0L * nu * nu;
  const long double ex = 8.0L * x;
  long double p = 1.0L, q = 0.0L;
  long double a = 1.0L;
  long double prev = std::numeric_limits<long double>::infinity();
  for (int k = 1; k < 200; ++k) {
    const long double odd = 2.0L * k - 1.0L;
    a *= (mu - odd * odd) / (k * ex);
    const long double mag = std::fabs(a);
    if (mag > prev || mag == 0.0L) break;
    prev = mag;
    const int sgn = ((k / 2) % 2 == 0) ? 1 : -1;
    if (k % 2 == 0) {
      p += sgn * a;
    } else {
      q += sgn * a;
    }
    if (mag < 1e-22L) break;
  }
  const long double phi = (2.0L * nu + 1.0L) * kPiL / 4.0L;
  const long double cx = std::cos(x), sx = std::sin(x);
  const long double cphi = std::cos(phi), sphi = std::sin(phi);
  const long double cchi = cx * cphi + sx * sphi;
  const long double schi = sx * cphi - cx * sphi;
  return std::sqrt(2.0L / (kPiL * x)) * (p * cchi - q * schi);
}

long double bessel_j01(int nu, long double x) {
  if (x <= 12.0L) return bessel_series_ld(nu, x);
  if (x <= 25.0L) return static_cast<long double>(bessel_series_q(nu, static_cast<quad>(x)));
  return bessel_hankel(nu, x);
}

}  // namespace

double gamma(double x) {
  if (std::isnan(x)) throw DomainError("gamma: NaN argument");
  if (x <= 0 && x == std::floor(x)) {
    std::ostringstream os;
    os << "gamma: pole at " << x;
    throw DomainError(os.str());
  }
  return std::tgamma(x);
}

double rgamma(double x) { return static_cast<double>(rgamma_ld(x)); }

double bessel_j(int order, double x) {
  if (order < 0 || order > 2) throw DomainError("bessel_j: order must be 0, 1 or 2");
  if (!(x >= 0)) throw DomainError("bessel_j: argument must be non-negative");
  const long double xl = x;
  switch (order) {
    case 0:
      return static_cast<double>(bessel_j01(0, xl));
    case 1:
      return static_cast<double>(bessel_j01(1, xl));
    default:
      if (xl < 1.0L) return static_cast<double>(bessel_series_ld(2, xl));
      return static_cast<double>(2.0L / xl * bessel_j01(1, xl) - bessel_j01(0, xl));
  }
}

double mittag_leffler(MLParams p, double z) {
  if (!(p.alpha > 0 && p.alpha <= 2) || !std::isfinite(p.beta)) {
    std::ostringstream os;
    os << "mittag_leffler: invalid parameters alpha=" << p.alpha << " beta=" << p.beta;
    throw DomainError(os.str());
  }
  if (std::isnan(z)) throw DomainError("mittag_leffler: NaN argument");
  if (z == 0) return rgamma(p.beta);
  if (std::isinf(z)) {
    if (z < 0) return 0.0;
    return std::numeric_limits<double>::infinity();
  }

  // E_{1,m}(z) = z^{1-m} e^z for integer m <= 1; exponentially small for
  // z < 0, where no alternating series keeps relative accuracy.
  if (p.alpha == 1.0 && p.beta <= 1.0 && p.beta == std::floor(p.beta)) {
    const long double zl = z;
    return static_cast<double>(std::pow(zl, 1.0L - p.beta) * std::exp(zl));
  }

  const long double rho = std::pow(std::fabs(static_cast<long double>(z)), 1.0L / p.alpha);
  if (rho <= kMLQuadRho) {
    const SeriesTable& table = series_table(p.alpha, p.beta);
    if (rho <= kMLLongDoubleRho) {
      return static_cast<double>(sum_series<long double>(table.ld, z, p.alpha, rho, 1e-21L));
    }
    return static_cast<double>(sum_series<quad>(table.q, z, p.alpha, rho, kQuadEps));
  }
  return ml_asymptotic(p.alpha, p.beta, z, rho);
}

}  // namespace fbm
