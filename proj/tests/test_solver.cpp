#include <gtest/gtest.h>

#include <cmath>

#include "fbm/errors.hpp"
#include "fbm/fracops.hpp"
#include "fbm/solver.hpp"
#include "fbm/specfun.hpp"

using namespace fbm;

namespace {

ProblemSpec base_spec(int N = 20) {
  ProblemSpec s;
  s.op = OperatorParams::make(0.8, 0.3, 1.6, 1.4, 0.5);
  s.T = 1.0;
  s.nonlocal = {{0.6, -0.7}, {0.5, -0.3}};
  s.forcing = Forcing::builtin(Polynomial({1.0}), Polynomial({1.0, 0.5}));
  s.N = N;
  return s;
}

double rel(double got, double want) { return std::fabs(got - want) / std::max(std::fabs(want), 1e-300); }

// T at which Delta_1 crosses zero, by bisection on the terminal term
double delta1_root(ProblemSpec s) {
  ModeRecord m;
  m.ev = bessel_zero(1);
  m.psi_slope = psi_slope(s, m.ev.lambda);
  double lo = 0.1, hi = 2.0;
  auto f = [&](double T) {
    s.T = T;
    return compute_Delta_k(m, s);
  };
  EXPECT_LT(f(lo) * f(hi), 0.0);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(lo) * f(mid) <= 0 ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST(ProblemSpec, ValidationNamesIndices) {
  ProblemSpec s = base_spec();
  s.nonlocal = {{0.5, -0.3}, {0.5, -0.7}};
  try {
    s.validate();
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("0 and 1"), std::string::npos) << e.what();
  }
  s.nonlocal = {{0.5, 0.1}};
  EXPECT_THROW(s.validate(), DomainError);
  s.nonlocal = {{0.5, -1.5}};
  EXPECT_THROW(s.validate(), DomainError);
  s.nonlocal.clear();
  EXPECT_THROW(s.validate(), DomainError);
}

TEST(Routes, MomentsAgreeWithQuadrature) {
  const ProblemSpec s = base_spec();
  for (int k : {1, 3, 10, 20}) {
    const ModeRecord m = make_mode(s, bessel_zero(k));
    for (double t : {0.05, 0.6, 1.0}) {
      EXPECT_LT(rel(compute_Gk(m, s, t, Route::quadrature), compute_Gk(m, s, t, Route::moments)), 5e-7) << k;
    }
    for (double b : {s.op.delta2, s.op.delta2 + s.op.nu(), s.op.delta2 - s.op.gamma2 + 2}) {
      for (double xi : {-0.7, -0.05}) {
        const double a = mode_convolution(m, s, b, xi, Route::moments);
        EXPECT_LT(rel(mode_convolution(m, s, b, xi, Route::quadrature), a), 1e-9) << k << " " << b;
      }
    }
  }
}

// G_k solves the forced hyper-Bessel mode equation with zero initial value
TEST(ModeG, SolvesForcedEquation) {
  const ProblemSpec s = base_spec();
  for (int k : {1, 4}) {
    const ModeRecord m = make_mode(s, bessel_zero(k));
    const double lam2 = m.ev.lambda * m.ev.lambda;
    const RealFn G = [&](double t) { return compute_Gk(m, s, t); };
    for (double t : {0.3, 0.9}) {
      const double d = hyper_bessel_caputo(s.op, G, 0.0, t, KernelQuadrature{128, s.op.p * s.op.alpha1});
      EXPECT_LT(std::fabs(d + lam2 * G(t) - m.f(t)) / std::fabs(m.f(t)), 1e-6) << k << " " << t;
    }
  }
}

TEST(ModeRecord, NonlocalConditionHoldsPerMode) {
  for (auto psi : {PsiForm::exact, PsiForm::printed}) {
    for (auto dv : {DeltaVariant::consistent, DeltaVariant::paper_literal}) {
      ProblemSpec s = base_spec();
      s.variants.psi = psi;
      s.variants.delta = dv;
      for (int k : {1, 2, 7, 20}) {
        const ModeRecord m = make_mode(s, bessel_zero(k));
        double lhs = 0.0;
        for (const auto& pt : s.nonlocal) lhs += pt.p * mode_rl_trace(m, s, pt.xi);
        // the literal argument is not the trace of the solution formula
        if (dv == DeltaVariant::consistent) {
          EXPECT_LT(rel(lhs, mode_value(m, s, s.T)), 1e-11) << k;
        } else {
          EXPECT_GT(rel(lhs, mode_value(m, s, s.T)), 1e-6) << k;
        }
      }
    }
  }
}

TEST(ModeRecord, GluingCoefficients) {
  ProblemSpec s = base_spec();
  for (const auto& ev : eigenvalues(10)) {
    const ModeRecord m = make_mode(s, ev);
    EXPECT_EQ(m.phi, m.tau);
    EXPECT_NEAR(m.psi, m.psi_slope * m.tau + m.psi_shift, 1e-18);
    EXPECT_NEAR(m.tau, m.F / m.Delta, 1e-15 * std::fabs(m.tau));
  }
  s.variants.psi = PsiForm::printed;
  const double pa = std::pow(s.op.p, s.op.alpha1) * std::tgamma(s.op.alpha1);
  for (const auto& ev : eigenvalues(10)) {
    const ModeRecord m = make_mode(s, ev);
    EXPECT_NEAR(m.psi * pa, -ev.lambda * ev.lambda * m.tau, 1e-14 * std::fabs(m.psi * pa));
  }
}

TEST(ModeRecord, IncrementMatchesValue) {
  const ProblemSpec s = base_spec();
  const ModeRecord m = make_mode(s, bessel_zero(2));
  for (double t : {0.1, 0.5, 1.0}) {
    EXPECT_NEAR(mode_increment(m, s, t), mode_value(m, s, t) - m.tau, 1e-15);
  }
  EXPECT_EQ(mode_value(m, s, 0.0), m.tau);
  EXPECT_EQ(mode_rl_trace(m, s, 0.0), m.phi);
}

TEST(DeltaLimit, AllVariantsConverge) {
  for (auto psi : {PsiForm::exact, PsiForm::printed}) {
    for (auto dv : {DeltaVariant::consistent, DeltaVariant::paper_literal}) {
      ProblemSpec s = base_spec();
      s.variants.psi = psi;
      s.variants.delta = dv;
      ModeRecord m;
      m.ev = bessel_zero(400);
      m.psi_slope = psi_slope(s, m.ev.lambda);
      EXPECT_NEAR(compute_Delta_k(m, s), delta_limit(s), 2e-5);
    }
  }
}

TEST(DeltaLimit, StatedFormulaForPrintedLiteral) {
  ProblemSpec s = base_spec();
  s.variants.psi = PsiForm::printed;
  s.variants.delta = DeltaVariant::paper_literal;
  double want = 0.0;
  for (const auto& pt : s.nonlocal) {
    want += pt.p / (std::tgamma(s.op.alpha1) * std::pow(s.op.p, s.op.alpha1) * std::tgamma(2 - s.op.delta2));
  }
  EXPECT_NEAR(delta_limit(s), want, 1e-14);
}

TEST(Solve, ZeroForcingGivesExactZero) {
  ProblemSpec s = base_spec(30);
  s.forcing = Forcing::zero();
  const SeriesSolution sol = solve_modes(s);
  for (const auto& m : sol.modes) EXPECT_EQ(m.tau, 0.0);
  for (double t : {-1.0, -0.4, 0.0, 0.5, 1.0}) {
    for (double x : {0.0, 0.3, 1.0}) EXPECT_EQ(sol.eval_u(x, t), 0.0);
  }
}

TEST(Solve, SolvabilityGuardNamesMode) {
  ProblemSpec s = base_spec(5);
  s.nonlocal = {{0.05, -0.05}};
  s.T = delta1_root(s);
  try {
    solve_modes(s);
    FAIL() << "expected a solvability error";
  } catch (const SolvabilityError& e) {
    ASSERT_EQ(e.modes().size(), 1u);
    EXPECT_EQ(e.modes()[0], 1);
    EXPECT_NE(std::string(e.what()).find("k = 1"), std::string::npos);
  }
}

TEST(Solve, ThreadCountDoesNotChangeResults) {
  ProblemSpec a = base_spec(24);
  a.threads = 1;
  ProblemSpec b = a;
  b.threads = 4;
  const SeriesSolution sa = solve_modes(a), sb = solve_modes(b);
  for (std::size_t k = 0; k < sa.modes.size(); ++k) {
    EXPECT_EQ(sa.modes[k].tau, sb.modes[k].tau);
    EXPECT_EQ(sa.modes[k].Delta, sb.modes[k].Delta);
  }
  EXPECT_EQ(sa.tail_estimate, sb.tail_estimate);
}

TEST(Solve, SpatialDerivativesMatchDifferences) {
  const SeriesSolution sol = solve_modes(base_spec(30));
  for (double t : {-0.5, 0.5}) {
    for (double x : {0.2, 0.6}) {
      const double h = 1e-4;
      const double up = sol.eval_u(x + h, t), u0 = sol.eval_u(x, t), um = sol.eval_u(x - h, t);
      const auto d = sol.eval_u_derivatives(x, t);
      EXPECT_NEAR(d.u_x, (up - um) / (2 * h), 1e-8);
      EXPECT_NEAR(d.u_xx, (up - 2 * u0 + um) / (h * h), 1e-5);
    }
  }
  EXPECT_THROW(sol.eval_u(1.2, 0.0), DomainError);
  EXPECT_THROW(sol.eval_u(0.5, 1.5), DomainError);
}

TEST(Solve, TabulatedForcingTracksSeparable) {
  ProblemSpec sep = base_spec(6);
  TabulatedField tab;
  for (int i = 0; i <= 80; ++i) tab.xs.push_back(i / 80.0);
  for (int j = 0; j <= 20; ++j) tab.ts.push_back(-1.0 + j / 10.0);
  for (double t : tab.ts) {
    for (double x : tab.xs) tab.values.push_back(sep.forcing(x, t));
  }
  ProblemSpec tb = sep;
  tb.forcing = Forcing::tabulated(tab);
  const SeriesSolution a = solve_modes(sep), b = solve_modes(tb);
  for (std::size_t k = 0; k < 3; ++k) EXPECT_LT(rel(b.modes[k].tau, a.modes[k].tau), 2e-3) << k;
}

TEST(Solve, AsymptoticEigenvaluesSelectable) {
  ProblemSpec s = base_spec(8);
  s.variants.eigen = EigenMode::asymptotic;
  const SeriesSolution sol = solve_modes(s);
  EXPECT_DOUBLE_EQ(sol.modes[3].ev.lambda, asymptotic_eigenvalue(4).lambda);
}
