#include "fbm/solver.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <sstream>
#include <thread>

#include "fbm/errors.hpp"
#include "fbm/specfun.hpp"

namespace fbm {

namespace {

double ml(double a, double b, double z) { return mittag_leffler({a, b}, z); }

bool moments_route(const ModeRecord& mode, Route route) {
  if (route == Route::moments && !mode.f.poly) {
    throw DomainError("moment route needs a polynomial time coefficient");
  }
  return route == Route::moments || (route == Route::automatic && mode.f.poly.has_value());
}

// z for the Mittag-Leffler terms evaluated at a non-local point.
double nonlocal_argument(double lam2, double xi, double delta, DeltaVariant v) {
  const double d = -xi;
  return v == DeltaVariant::consistent ? -lam2 * std::pow(d, delta) : -lam2 * d;
}

}  // namespace

void ProblemSpec::validate() const {
  op.validate();
  if (!(T > 0) || !std::isfinite(T)) throw DomainError("T must be positive");
  if (N < 1) throw DomainError("N must be at least 1");
  if (nonlocal.empty()) throw DomainError("at least one non-local point is required");
  for (std::size_t i = 0; i < nonlocal.size(); ++i) {
    const double xi = nonlocal[i].xi;
    if (!(xi >= -T && xi <= 0)) {
      std::ostringstream os;
      os << "non-local point " << i << " has xi=" << xi << " outside [-T, 0]";
      throw DomainError(os.str());
    }
    if (i > 0 && !(nonlocal[i - 1].xi < xi)) {
      std::ostringstream os;
      os << "non-local points " << i - 1 << " and " << i << " are not strictly increasing in xi";
      throw DomainError(os.str());
    }
    if (!std::isfinite(nonlocal[i].p)) throw DomainError("non-local weight must be finite");
  }
  if (!(variants.delta_floor >= 0)) throw DomainError("delta_floor must be non-negative");
}

double ModeForcing::operator()(double t) const {
  if (poly) return (*poly)(t);
  if (ts.empty()) return 0.0;
  if (t <= ts.front()) return values.front();
  if (t >= ts.back()) return values.back();
  auto it = std::upper_bound(ts.begin(), ts.end(), t);
  const std::size_t j = static_cast<std::size_t>(it - ts.begin()) - 1;
  const double w = (t - ts[j]) / (ts[j + 1] - ts[j]);
  return (1 - w) * values[j] + w * values[j + 1];
}

bool ModeForcing::is_zero() const {
  if (poly) return poly->is_zero();
  return std::all_of(values.begin(), values.end(), [](double v) { return v == 0.0; });
}

ModeForcing project_forcing(const Forcing& forcing, const Eigenvalue& ev) {
  ModeForcing mf;
  switch (forcing.kind) {
    case Forcing::Kind::zero:
      mf.poly = Polynomial({0.0});
      break;
    case Forcing::Kind::separable: {
      const Polynomial& s = forcing.spatial;
      const double c = fourier_bessel_coeff([&](double x) { return s(x); }, ev);
      mf.poly = forcing.temporal * c;
      break;
    }
    case Forcing::Kind::tabulated: {
      const TabulatedField& tab = *forcing.table;
      ProjectionOptions opts;
      opts.breakpoints = tab.xs;
      mf.ts = tab.ts;
      mf.values.reserve(tab.ts.size());
      for (double tj : tab.ts) {
        mf.values.push_back(fourier_bessel_coeff([&](double x) { return tab(x, tj); }, ev, opts));
      }
      break;
    }
  }
  return mf;
}

double compute_Gk(const ModeRecord& mode, const ProblemSpec& spec, double t, Route route) {
  if (t < 0) throw DomainError("compute_Gk: t must be non-negative");
  if (t == 0 || mode.f.is_zero()) return 0.0;
  const double a = spec.op.alpha1;
  const double p = spec.op.p;
  const double lam2 = mode.ev.lambda * mode.ev.lambda;
  const double pa = std::pow(p, a);
  const double c = -lam2 / pa;
  const double X = std::pow(t, p);
  const double zX = c * std::pow(X, a);

  if (moments_route(mode, route)) {
    const auto& b = mode.f.poly->coeffs();
    double s = 0.0;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (b[j] == 0.0) continue;
      const double q = static_cast<double>(j) / p;
      s += b[j] * gamma(q + 1.0) * std::pow(t, p * a + static_cast<double>(j)) * ml(a, a + q + 1.0, zX);
    }
    return s / pa;
  }

  // both printed convolution terms on shared nodes, w = t^p - tau^p
  const double ga = rgamma(a);
  const auto kernel = [&](double w) {
    const double wa = std::pow(w, a);
    return ga - (lam2 / pa) * wa * ml(a, 2.0 * a, c * wa);
  };
  const double half = 0.5 * X;
  const RealFn g = [&](double w) { return kernel(w) * mode.f(std::pow(X - w, 1.0 / p)); };
  const double layer = std::pow(std::fabs(c), -1.0 / a);
  const double near = integrate_layered(a - 1.0, 0.0, half, layer, g, 16, a);
  // tau^p < X/2 in the variable tau itself, where f is smooth
  const double th = std::pow(half, 1.0 / p);
  const auto rule = cached_gauss_jacobi(48, p - 1.0, 0.0);
  double far = 0.0;
  for (std::size_t i = 0; i < rule->size(); ++i) {
    const double tau = th * rule->nodes[i];
    const double w = X - std::pow(tau, p);
    far += rule->weights[i] * std::pow(w, a - 1.0) * kernel(w) * mode.f(tau);
  }
  far *= p * half;
  return (near + far) / pa;
}

double mode_convolution(const ModeRecord& mode, const ProblemSpec& spec, double b, double s,
                        Route route) {
  if (s > 0) throw DomainError("mode_convolution: s must be non-positive");
  const double L = -s;
  if (L == 0 || mode.f.is_zero()) return 0.0;
  const double d = spec.op.delta2;
  const double lam2 = mode.ev.lambda * mode.ev.lambda;
  const double z = -lam2 * std::pow(L, d);

  if (moments_route(mode, route)) {
    const auto& c = mode.f.poly->coeffs();
    double sum = 0.0;
    double fact = 1.0;
    for (std::size_t j = 0; j < c.size(); ++j) {
      if (j > 0) fact *= static_cast<double>(j);
      if (c[j] == 0.0) continue;
      const double sign = (j % 2 == 0) ? 1.0 : -1.0;
      sum += c[j] * sign * fact * std::pow(L, b + static_cast<double>(j)) *
             ml(d, b + static_cast<double>(j) + 1.0, z);
    }
    return sum;
  }

  const RealFn g = [&](double w) { return ml(d, b, -lam2 * std::pow(w, d)) * mode.f(s + w); };
  const double layer = std::pow(lam2, -1.0 / d);
  return integrate_layered(b - 1.0, 0.0, L, layer, g, 16, d);
}

double compute_Delta_k(const ModeRecord& mode, const ProblemSpec& spec, DeltaVariant variant) {
  const double a = spec.op.alpha1;
  const double p = spec.op.p;
  const double d = spec.op.delta2;
  const double lam2 = mode.ev.lambda * mode.ev.lambda;
  double s = 0.0;
  for (const auto& pt : spec.nonlocal) {
    const double z = nonlocal_argument(lam2, pt.xi, d, variant);
    s += pt.p * (ml(d, 1.0, z) - mode.psi_slope * (-pt.xi) * ml(d, 2.0, z));
  }
  const double zT = -lam2 / std::pow(p, a) * std::pow(spec.T, a * p);
  return s - ml(a, 1.0, zT);
}

double compute_Delta_k(const ModeRecord& mode, const ProblemSpec& spec) {
  return compute_Delta_k(mode, spec, spec.variants.delta);
}

double compute_Fk(const ModeRecord& mode, const ProblemSpec& spec, Route route) {
  if (mode.f.is_zero()) return 0.0;
  const double d = spec.op.delta2;
  const double b = d - spec.op.gamma2 + 2.0;
  const double lam2 = mode.ev.lambda * mode.ev.lambda;
  double s = compute_Gk(mode, spec, spec.T, route);
  for (const auto& pt : spec.nonlocal) {
    s -= pt.p * mode_convolution(mode, spec, b, pt.xi, route);
    if (mode.psi_shift != 0.0) {
      const double z = nonlocal_argument(lam2, pt.xi, d, spec.variants.delta);
      s += mode.psi_shift * pt.p * (-pt.xi) * ml(d, 2.0, z);
    }
  }
  return s;
}

double delta_limit(const ProblemSpec& spec) {
  const double a = spec.op.alpha1;
  const double p = spec.op.p;
  const double d = spec.op.delta2;
  const double coef = spec.variants.psi == PsiForm::printed ? 1.0 / (std::pow(p, a) * gamma(a))
                                                            : std::pow(p, 1.0 - a) / gamma(a);
  double L = 0.0;
  for (const auto& pt : spec.nonlocal) {
    if (pt.xi == 0.0) {
      L += pt.p;
      continue;
    }
    const double w = spec.variants.delta == DeltaVariant::consistent ? std::pow(-pt.xi, 1.0 - d) : 1.0;
    L += pt.p * coef * w * rgamma(2.0 - d);
  }
  return L;
}

double psi_slope(const ProblemSpec& spec, double lambda) {
  const double a = spec.op.alpha1;
  const double p = spec.op.p;
  const double lam2 = lambda * lambda;
  if (spec.variants.psi == PsiForm::printed) return -lam2 / (std::pow(p, a) * gamma(a));
  return -lam2 * std::pow(p, 1.0 - a) / gamma(a);
}

ModeRecord make_mode(const ProblemSpec& spec, const Eigenvalue& ev) {
  ModeRecord m;
  m.ev = ev;
  m.f = project_forcing(spec.forcing, ev);
  m.psi_slope = psi_slope(spec, ev.lambda);
  if (spec.variants.psi == PsiForm::exact && !m.f.is_zero()) {
    const double a = spec.op.alpha1;
    m.psi_shift = std::pow(spec.op.p, 1.0 - a) / gamma(a) * m.f(0.0);
  }
  m.Delta = compute_Delta_k(m, spec);
  m.F = compute_Fk(m, spec);
  if (std::fabs(m.Delta) >= spec.variants.delta_floor && m.Delta != 0.0) {
    m.tau = m.F / m.Delta;
  }
  m.phi = m.tau;
  m.psi = m.psi_slope * m.tau + m.psi_shift;
  return m;
}

double mode_value(const ModeRecord& mode, const ProblemSpec& spec, double t, Route route) {
  if (t == 0) return mode.tau;
  if (t > 0) {
    const double a = spec.op.alpha1;
    const double p = spec.op.p;
    const double lam2 = mode.ev.lambda * mode.ev.lambda;
    const double z = -lam2 / std::pow(p, a) * std::pow(t, a * p);
    double v = compute_Gk(mode, spec, t, route);
    if (mode.tau != 0.0) v += mode.tau * ml(a, 1.0, z);
    return v;
  }
  const double d = spec.op.delta2;
  const double g = spec.op.gamma2;
  const double lam2 = mode.ev.lambda * mode.ev.lambda;
  const double y = -t;
  const double z = -lam2 * std::pow(y, d);
  double v = mode_convolution(mode, spec, d, t, route);
  if (mode.phi != 0.0) v += mode.phi * std::pow(y, g - 2.0) * ml(d, g - 1.0, z);
  if (mode.psi != 0.0) v -= mode.psi * std::pow(y, g - 1.0) * ml(d, g, z);
  return v;
}

double mode_increment(const ModeRecord& mode, const ProblemSpec& spec, double t, Route route) {
  if (!(t > 0)) throw DomainError("mode_increment: t must be positive");
  const double a = spec.op.alpha1;
  const double p = spec.op.p;
  const double lam2 = mode.ev.lambda * mode.ev.lambda;
  const double z = -lam2 / std::pow(p, a) * std::pow(t, a * p);
  double v = compute_Gk(mode, spec, t, route);
  if (mode.tau != 0.0) v += mode.tau * z * ml(a, a + 1.0, z);
  return v;
}

double mode_rl_trace(const ModeRecord& mode, const ProblemSpec& spec, double t, Route route) {
  if (t > 0) throw DomainError("mode_rl_trace: t must be non-positive");
  if (t == 0) return mode.phi;
  const double d = spec.op.delta2;
  const double b = d + spec.op.nu();
  const double lam2 = mode.ev.lambda * mode.ev.lambda;
  const double y = -t;
  const double z = -lam2 * std::pow(y, d);
  double v = mode_convolution(mode, spec, b, t, route);
  if (mode.phi != 0.0) v += mode.phi * ml(d, 1.0, z);
  if (mode.psi != 0.0) v -= mode.psi * y * ml(d, 2.0, z);
  return v;
}

std::vector<double> SeriesSolution::mode_values(double t) const {
  std::vector<double> out(modes.size());
  for (std::size_t k = 0; k < modes.size(); ++k) out[k] = mode_value(modes[k], spec, t);
  return out;
}

double SeriesSolution::synthesize(const std::vector<double>& amplitudes, double x) const {
  double s = 0.0;
  for (std::size_t k = 0; k < modes.size(); ++k) {
    if (amplitudes[k] != 0.0) s += amplitudes[k] * bessel_j(0, modes[k].ev.lambda * x);
  }
  return s;
}

SpatialDerivatives SeriesSolution::synthesize_derivatives(const std::vector<double>& amplitudes,
                                                          double x) const {
  SpatialDerivatives d;
  for (std::size_t k = 0; k < modes.size(); ++k) {
    if (amplitudes[k] == 0.0) continue;
    const double lam = modes[k].ev.lambda;
    const double lx = lam * x;
    d.u_x -= amplitudes[k] * lam * bessel_j(1, lx);
    d.u_xx += amplitudes[k] * 0.5 * lam * lam * (bessel_j(2, lx) - bessel_j(0, lx));
  }
  return d;
}

double SeriesSolution::eval_u(double x, double t) const {
  if (!(x >= 0 && x <= 1)) throw DomainError("eval_u: x must lie in [0,1]");
  if (!(t >= -spec.T && t <= spec.T)) throw DomainError("eval_u: t must lie in [-T,T]");
  return synthesize(mode_values(t), x);
}

SpatialDerivatives SeriesSolution::eval_u_derivatives(double x, double t) const {
  if (!(x >= 0 && x <= 1)) throw DomainError("eval_u_derivatives: x must lie in [0,1]");
  if (!(t >= -spec.T && t <= spec.T)) throw DomainError("eval_u_derivatives: t must lie in [-T,T]");
  return synthesize_derivatives(mode_values(t), x);
}

SeriesSolution solve_modes(const ProblemSpec& spec) {
  spec.validate();
  const std::vector<Eigenvalue> evs = eigenvalues(spec.N, spec.variants.eigen);

  SeriesSolution sol;
  sol.spec = spec;
  sol.modes.resize(evs.size());
  std::vector<std::exception_ptr> errors(evs.size());

  unsigned workers = spec.threads > 0 ? static_cast<unsigned>(spec.threads)
                                      : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(evs.size()));
  std::atomic<std::size_t> next{0};
  const auto work = [&] {
    for (std::size_t i = next++; i < evs.size(); i = next++) {
      try {
        sol.modes[i] = make_mode(spec, evs[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  std::vector<int> bad;
  for (const auto& m : sol.modes) {
    if (!(std::fabs(m.Delta) >= spec.variants.delta_floor) || m.Delta == 0.0) bad.push_back(m.ev.k);
  }
  if (!bad.empty()) {
    std::ostringstream os;
    os << "Delta_k below floor " << spec.variants.delta_floor << " for k =";
    for (int k : bad) os << ' ' << k;
    throw SolvabilityError(os.str(), bad);
  }

  const auto& last = sol.modes.back();
  sol.tail_estimate = std::fabs(last.tau) * std::sqrt(static_cast<double>(spec.N));
  return sol;
}

}  // namespace fbm
