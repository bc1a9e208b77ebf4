#include "fbm/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <future>
#include <limits>
#include <sstream>

#include "fbm/errors.hpp"
#include "fbm/fracops.hpp"
#include "fbm/specfun.hpp"

namespace fbm {

namespace {

Check make_check(std::string name, std::string anchor, double target, double measured,
                 double tol, std::string note = {}) {
  Check c;
  c.name = std::move(name);
  c.anchor = std::move(anchor);
  c.target = target;
  c.measured = measured;
  c.tolerance = tol;
  c.status = (std::isfinite(measured) && std::fabs(measured - target) <= tol) ? CheckStatus::pass
                                                                               : CheckStatus::fail;
  c.note = std::move(note);
  return c;
}

std::vector<double> check_times(double T) {
  std::vector<double> ts;
  for (int j = -8; j <= 8; ++j) ts.push_back(T * j / 8.0);
  return ts;
}

std::vector<double> uniform(int n) {
  std::vector<double> xs(n);
  for (int i = 0; i < n; ++i) xs[i] = static_cast<double>(i) / (n - 1);
  return xs;
}

// max over xs of |sum_k a_k J0(lambda_k x)|
double sup_series(const SeriesSolution& sol, const std::vector<double>& a,
                  const std::vector<double>& xs) {
  double m = 0.0;
  for (double x : xs) m = std::max(m, std::fabs(sol.synthesize(a, x)));
  return m;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

RealFn mode_fn(const ModeRecord& m, const ProblemSpec& spec) {
  return [&m, &spec](double t) { return mode_value(m, spec, t); };
}

// I^nu_{0-} u_k at t < 0 by the kernel quadrature oracle.
double oracle_trace(const ModeRecord& m, const ProblemSpec& spec, double t, int nodes) {
  const double nu = spec.op.nu();
  const RealFn u = mode_fn(m, spec);
  if (nu <= 0) return u(t);
  return rl_integral_right(nu, u, t, KernelQuadrature{nodes, spec.op.gamma2 - 2.0});
}

// Depth below t = 0 where lambda^2 |t|^delta = eta.
double layer_depth(const ProblemSpec& spec, double lambda, double eta) {
  const double y = std::pow(eta / (lambda * lambda), 1.0 / spec.op.delta2);
  return std::min(y, 1e-3 * spec.T);
}

// lim t->0+ of t^{1-p a} u_k'(t), fourth-order differences in log t.
double positive_derivative_trace(const ModeRecord& m, const ProblemSpec& spec) {
  const double pa = spec.op.p * spec.op.alpha1;
  const double lam2 = m.ev.lambda * m.ev.lambda;
  const double t = std::min(std::pow(1e-6 * std::pow(spec.op.p, spec.op.alpha1) / lam2, 1.0 / pa),
                            1e-3 * spec.T);
  const double h = 0.05;
  const auto g = [&](double s) { return mode_increment(m, spec, s); };
  const double d1 = (-g(t * std::exp(2 * h)) + 8 * g(t * std::exp(h)) - 8 * g(t * std::exp(-h)) +
                     g(t * std::exp(-2 * h))) /
                    (12 * h);
  return std::pow(t, -pa) * d1;
}

// lim t->0- of d/dt I^nu u_k, from oracle traces. The corrections scale like
// |t|^(delta-1) and |t|^(delta+nu-1); both are removed by Richardson steps.
double negative_derivative_trace(const ModeRecord& m, const ProblemSpec& spec, int nodes) {
  const double y = layer_depth(spec, m.ev.lambda, 1e-6);
  const auto slope = [&](double s) {
    return (oracle_trace(m, spec, -s, nodes) - oracle_trace(m, spec, -3 * s, nodes)) / (2 * s);
  };
  const auto step = [](double fine, double coarse, double e) {
    const double r = std::pow(4.0, e);
    return (r * fine - coarse) / (r - 1.0);
  };
  const double e1 = spec.op.delta2 - 1.0;
  const double e2 = e1 + spec.op.nu();
  const double s0 = slope(y), s1 = slope(4 * y);
  if (e2 - e1 < 0.05) return step(s0, s1, e1);
  const double s2 = slope(16 * y);
  return step(step(s0, s1, e1), step(s1, s2, e1), e2);
}

}  // namespace

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass:
      return "pass";
    case CheckStatus::fail:
      return "fail";
    case CheckStatus::inconclusive:
      return "inconclusive";
    default:
      return "report-only";
  }
}

bool VerificationReport::overall() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed(); });
}

const Check* VerificationReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

double solution_norm(const SeriesSolution& sol) {
  const auto xs = uniform(11);
  double m = 0.0;
  for (double t : check_times(sol.spec.T)) m = std::max(m, sup_series(sol, sol.mode_values(t), xs));
  return m;
}

std::vector<Check> check_boundary(const SeriesSolution& sol, const VerifyOptions& opts) {
  double edge = 0.0;
  std::vector<double> axis(3, 0.0);
  const double xs[3] = {1e-2, 1e-3, 1e-4};
  for (double t : check_times(sol.spec.T)) {
    const auto a = sol.mode_values(t);
    edge = std::max(edge, std::fabs(sol.synthesize(a, 1.0)));
    for (int i = 0; i < 3; ++i) {
      axis[i] = std::max(axis[i], std::fabs(xs[i] * sol.synthesize_derivatives(a, xs[i]).u_x));
    }
  }
  std::vector<Check> out;
  out.push_back(make_check("boundary_edge", "u(1,t) = 0", 0.0, edge, opts.boundary_tol));
  Check c = make_check("boundary_axis", "x u_x(x,t) -> 0 as x -> 0+", 0.0, axis[2], opts.boundary_tol,
                       "max_t |x u_x| at x=1e-2,1e-3,1e-4: " + fmt(axis[0]) + ", " + fmt(axis[1]) +
                           ", " + fmt(axis[2]));
  if (!(axis[1] <= axis[0] && axis[2] <= axis[1])) c.status = CheckStatus::fail;
  out.push_back(c);
  return out;
}

std::vector<Check> check_gluing(const SeriesSolution& sol, const VerifyOptions& opts) {
  const ProblemSpec& spec = sol.spec;
  const std::size_t n = sol.modes.size();
  std::vector<Check> out;

  double coef = 0.0;
  for (const auto& m : sol.modes) {
    const double scale = std::max({std::fabs(m.tau), std::fabs(m.psi), 1e-300});
    const double r = std::fabs(m.phi - m.tau) + std::fabs(m.psi - (m.psi_slope * m.tau + m.psi_shift));
    coef = std::max(coef, r / scale);
  }
  out.push_back(make_check("gluing_coefficients", "phi_k = tau_k and psi_k from the derivative gluing",
                           0.0, coef, 1e-14,
                           spec.variants.psi == PsiForm::exact ? "psi form: exact" : "psi form: printed"));

  std::vector<double> lim_pos(n), lim_neg(n), der_pos(n), der_neg(n);
  for (std::size_t k = 0; k < n; ++k) {
    const ModeRecord& m = sol.modes[k];
    const double lam2 = m.ev.lambda * m.ev.lambda;
    const double pa = spec.op.p * spec.op.alpha1;
    const double tp = std::min(std::pow(1e-10 * std::pow(spec.op.p, spec.op.alpha1) / lam2, 1.0 / pa),
                               1e-6 * spec.T);
    lim_pos[k] = mode_value(m, spec, tp);
    lim_neg[k] = oracle_trace(m, spec, -layer_depth(spec, m.ev.lambda, 1e-7), opts.oracle_nodes);
    der_pos[k] = positive_derivative_trace(m, spec);
    der_neg[k] = negative_derivative_trace(m, spec, opts.oracle_nodes);
  }
  const auto xs = uniform(11);
  std::vector<double> diff(n);
  for (std::size_t k = 0; k < n; ++k) diff[k] = lim_neg[k] - lim_pos[k];
  const double unorm = solution_norm(sol);
  out.push_back(make_check("gluing_trace", "lim t->0- I^nu u = u(x,0+)", 0.0, sup_series(sol, diff, xs),
                           opts.gluing_tol * unorm, "tolerance relative to ||u|| = " + fmt(unorm)));

  for (std::size_t k = 0; k < n; ++k) diff[k] = der_neg[k] - der_pos[k];
  const double dnorm = sup_series(sol, der_pos, xs);
  out.push_back(make_check("gluing_derivative", "lim t->0- d/dt I^nu u = lim t->0+ t^(1-p alpha1) u_t",
                           0.0, sup_series(sol, diff, xs), opts.gluing_tol * dnorm,
                           "tolerance relative to the derivative trace norm " + fmt(dnorm)));
  return out;
}

std::vector<Check> check_nonlocal(const SeriesSolution& sol, const VerifyOptions& opts) {
  const ProblemSpec& spec = sol.spec;
  const std::size_t n = sol.modes.size();

  std::vector<double> analytic(n), oracle(n), agree(n);
  for (std::size_t k = 0; k < n; ++k) {
    const ModeRecord& m = sol.modes[k];
    const double uT = mode_value(m, spec, spec.T);
    double a = -uT, o = -uT;
    for (const auto& pt : spec.nonlocal) {
      a += pt.p * mode_rl_trace(m, spec, pt.xi);
      const double t = pt.xi < 0 ? pt.xi : -layer_depth(spec, m.ev.lambda, 1e-7);
      o += pt.p * oracle_trace(m, spec, t, opts.oracle_nodes);
    }
    analytic[k] = a;
    oracle[k] = o;
    agree[k] = a - o;
  }
  const auto xs = uniform(21);
  const double unorm = solution_norm(sol);
  const double tol = opts.nonlocal_tol * unorm;
  const std::string note = "tolerance relative to ||u|| = " + fmt(unorm);
  std::vector<Check> out;
  out.push_back(make_check("nonlocal_analytic", "sum p_i I^nu u(x,xi_i) = u(x,T), closed-form traces", 0.0,
                           sup_series(sol, analytic, xs), tol, note));
  out.push_back(make_check("nonlocal_oracle", "sum p_i I^nu u(x,xi_i) = u(x,T), quadrature traces", 0.0,
                           sup_series(sol, oracle, xs), tol, note));
  out.push_back(make_check("nonlocal_route_agreement", "closed-form and quadrature traces agree", 0.0,
                           sup_series(sol, agree, xs), tol, note));
  return out;
}

std::vector<Check> check_mode_odes(const SeriesSolution& sol, int k_max, const VerifyOptions& opts) {
  const ProblemSpec& spec = sol.spec;
  if (k_max > static_cast<int>(sol.modes.size())) {
    throw DomainError("check_mode_odes: k_max exceeds the number of modes");
  }
  const OperatorParams& op = spec.op;
  const int nodes = opts.ode_nodes;
  const KernelQuadrature pos_q{nodes, op.p * op.alpha1};
  const HilferQuadrature neg_q{{nodes, op.gamma2 - 2.0}, {nodes, op.delta2 - 2.0}};

  double pos = 0.0, neg = 0.0;
  for (int k = 0; k < k_max; ++k) {
    const ModeRecord& m = sol.modes[k];
    const double lam2 = m.ev.lambda * m.ev.lambda;
    const RealFn u = mode_fn(m, spec);
    for (double frac : {0.25, 0.5, 0.75, 1.0}) {
      const double t = frac * spec.T;
      const double up = u(t);
      const double rp = hyper_bessel_caputo(op, u, m.tau, t, pos_q) + lam2 * up - m.f(t);
      const double sp = std::max(std::fabs(m.f(t)), lam2 * std::fabs(up));
      pos = std::max(pos, sp > 0 ? std::fabs(rp) / sp : std::fabs(rp));

      const double un = u(-t);
      const double rn = bi_ordinal_hilfer(op, u, -t, neg_q) + lam2 * un - m.f(-t);
      const double sn = std::max(std::fabs(m.f(-t)), lam2 * std::fabs(un));
      neg = std::max(neg, sn > 0 ? std::fabs(rn) / sn : std::fabs(rn));
    }
  }
  const std::string note = "k <= " + std::to_string(k_max) + ", t = +-{1/4,1/2,3/4,1} T";
  return {make_check("mode_ode_positive", "hyper-Bessel mode equation for t > 0", 0.0, pos, opts.ode_tol, note),
          make_check("mode_ode_negative", "bi-ordinal Hilfer mode equation for t < 0", 0.0, neg, opts.ode_tol,
                     note)};
}

std::vector<Check> check_delta_asymptote(const ProblemSpec& spec, const std::vector<int>& ks) {
  if (ks.size() < 2) throw DomainError("check_delta_asymptote: need at least two k values");
  for (std::size_t i = 1; i < ks.size(); ++i) {
    if (ks[i] <= ks[i - 1]) throw DomainError("check_delta_asymptote: k list must be increasing");
  }
  const double L = delta_limit(spec);
  std::vector<double> lambdas, gaps;
  bool monotone = true;
  std::ostringstream trail;
  for (int k : ks) {
    ModeRecord m;
    m.ev = spec.variants.eigen == EigenMode::true_zeros ? bessel_zero(k) : asymptotic_eigenvalue(k);
    m.psi_slope = psi_slope(spec, m.ev.lambda);
    const double gap = std::fabs(compute_Delta_k(m, spec) - L);
    if (!gaps.empty() && !(gap < gaps.back())) monotone = false;
    lambdas.push_back(m.ev.lambda);
    gaps.push_back(gap);
    trail << (gaps.size() > 1 ? ", " : "") << "k=" << k << ": " << fmt(gap);
  }
  std::vector<Check> out;
  Check mono = make_check("delta_gap_monotone", "Delta_k -> limit with shrinking gap", 0.0, gaps.back(),
                          std::max(1e-3, 1e-2 * std::fabs(L)), "limit " + fmt(L) + "; gaps " + trail.str());
  if (!monotone) mono.status = CheckStatus::fail;
  out.push_back(mono);

  const double slope = loglog_slope(lambdas, gaps, 0);
  Check rate = make_check("delta_gap_rate", "gap = O(lambda_k^-2)", -2.0, slope, 0.3,
                          "log-log slope of the gap over the listed k");
  // a gap already at rounding level has no measurable rate
  if (gaps.back() < 1e-13 * std::max(1.0, std::fabs(L))) rate.status = CheckStatus::pass;
  out.push_back(rate);
  return out;
}

std::vector<Check> check_ml_bound(const ProblemSpec& spec) {
  const OperatorParams& op = spec.op;
  const double a = op.alpha1, d = op.delta2, g = op.gamma2;
  const std::vector<MLParams> kernels = {{a, 1.0}, {a, a}, {a, 2.0 * a}, {d, 1.0},
                                         {d, 2.0}, {d, g - 1.0}, {d, g}};
  double sup = 0.0;
  for (const auto& kp : kernels) {
    for (double e = -3.0; e <= 8.0 + 1e-12; e += 0.05) {
      const double z = -std::pow(10.0, e);
      sup = std::max(sup, (1.0 + std::fabs(z)) * std::fabs(mittag_leffler(kp, z)));
    }
  }
  return {make_check("ml_bound", "|E(z)| <= M/(1+|z|) for z <= 0", 0.0, sup, 1e3,
                     "sup of (1+|z|)|E| over z in [-1e8, -1e-3] for the solver kernels")};
}

double loglog_slope(const std::vector<double>& lambdas, const std::vector<double>& values, int k_min) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t i = static_cast<std::size_t>(std::max(k_min - 1, 0)); i < values.size(); ++i) {
    if (!(std::fabs(values[i]) > 0)) continue;
    const double x = std::log(lambdas[i]);
    const double y = std::log(std::fabs(values[i]));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n < 2) return std::numeric_limits<double>::quiet_NaN();
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::vector<Check> check_decay_rates(const SeriesSolution& sol, const VerifyOptions& opts) {
  const int N = static_cast<int>(sol.modes.size());
  std::vector<double> lam, f, tau, psi;
  for (const auto& m : sol.modes) {
    lam.push_back(m.ev.lambda);
    double fk = 0.0;
    for (double t : check_times(sol.spec.T)) fk = std::max(fk, std::fabs(m.f(t)));
    f.push_back(fk);
    tau.push_back(m.tau);
    psi.push_back(m.psi);
  }
  const auto hyp = sol.spec.forcing.check_hypotheses();
  const bool gated = hyp.status != HypothesisStatus::satisfied || sol.spec.forcing.kind == Forcing::Kind::zero;
  const auto entry = [&](const std::string& name, const std::string& anchor, const std::vector<double>& v,
                         double bound) {
    const double slope = loglog_slope(lam, v, opts.decay_k_min);
    Check c;
    c.name = name;
    c.anchor = anchor;
    c.target = bound;
    c.measured = slope;
    c.tolerance = 0.0;
    c.note = "upper bound on the log-log slope over k >= " + std::to_string(opts.decay_k_min);
    if (N < opts.decay_min_modes) {
      c.status = CheckStatus::inconclusive;
      c.note = "needs at least " + std::to_string(opts.decay_min_modes) + " modes";
    } else if (gated) {
      c.status = CheckStatus::report_only;
      c.note = "forcing hypotheses " + to_string(hyp.status) + "; slope reported only";
    } else {
      c.status = slope <= bound ? CheckStatus::pass : CheckStatus::fail;
    }
    return c;
  };
  return {entry("decay_f", "|f_k| = O(lambda_k^-7/2)", f, -3.2),
          entry("decay_tau", "|tau_k| = |phi_k| = O(lambda_k^-7/2)", tau, -3.2),
          entry("decay_psi", "|psi_k| = O(lambda_k^-3/2)", psi, -1.2)};
}

VerificationReport verify(const SeriesSolution& sol, const VerifyOptions& opts) {
  const int k_ode = std::min(opts.ode_k_max, static_cast<int>(sol.modes.size()));
  std::vector<std::function<std::vector<Check>()>> jobs = {
      [&] { return check_boundary(sol, opts); },
      [&] { return check_gluing(sol, opts); },
      [&] { return check_nonlocal(sol, opts); },
      [&] { return check_mode_odes(sol, k_ode, opts); },
      [&] { return check_delta_asymptote(sol.spec, opts.delta_ks); },
      [&] { return check_ml_bound(sol.spec); },
      [&] { return check_decay_rates(sol, opts); },
  };
  std::vector<std::vector<Check>> parts(jobs.size());
  if (opts.concurrent) {
    std::vector<std::future<std::vector<Check>>> fut;
    for (auto& j : jobs) fut.push_back(std::async(std::launch::async, j));
    for (std::size_t i = 0; i < fut.size(); ++i) parts[i] = fut[i].get();
  } else {
    for (std::size_t i = 0; i < jobs.size(); ++i) parts[i] = jobs[i]();
  }
  VerificationReport rep;
  for (auto& p : parts) rep.checks.insert(rep.checks.end(), p.begin(), p.end());
  Check tail;
  tail.name = "series_tail";
  tail.anchor = "truncation remainder proxy |tau_N| sqrt(N)";
  tail.measured = sol.tail_estimate;
  tail.status = CheckStatus::report_only;
  rep.checks.push_back(tail);
  return rep;
}

}  // namespace fbm
