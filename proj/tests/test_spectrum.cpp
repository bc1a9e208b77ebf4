#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "fbm/errors.hpp"
#include "fbm/specfun.hpp"
#include "fbm/spectrum.hpp"

using namespace fbm;

TEST(BesselZero, MultiprecisionValues) {
  const std::pair<int, double> refs[] = {{1, 2.404825557695772768621632},  {2, 5.520078110286310649596604},
                                         {3, 8.653727912911012216954199},  {10, 30.63460646843197511754958},
                                         {50, 156.2950342685335238195495}, {200, 627.5333317469042254568406}};
  for (auto [k, z] : refs) EXPECT_NEAR(bessel_zero(k).lambda, z, 2e-15 * z) << k;
}

TEST(BesselZero, RootsIncreasingWithMcMahonSpacing) {
  double prev = 0.0;
  for (int k = 1; k <= 500; ++k) {
    const Eigenvalue ev = bessel_zero(k);
    EXPECT_EQ(ev.k, k);
    EXPECT_LT(std::fabs(bessel_j(0, ev.lambda)), 1e-15 * ev.lambda * std::fabs(bessel_j(1, ev.lambda)));
    EXPECT_GT(ev.lambda, prev);
    const double b = std::numbers::pi * (k - 0.25);
    EXPECT_NEAR(ev.lambda - b, 1.0 / (8 * b), 0.1 / (b * b * b)) << k;
    EXPECT_NEAR(ev.norm_sq, 0.5 * std::pow(bessel_j(1, ev.lambda), 2), 1e-16);
    prev = ev.lambda;
  }
  EXPECT_THROW(bessel_zero(0), DomainError);
}

TEST(AsymptoticEigenvalue, TakenVerbatim) {
  for (int k : {1, 7, 99}) EXPECT_DOUBLE_EQ(asymptotic_eigenvalue(k).lambda, std::numbers::pi * k - std::numbers::pi / 4);
  const auto evs = eigenvalues(5, EigenMode::asymptotic);
  ASSERT_EQ(evs.size(), 5u);
  EXPECT_DOUBLE_EQ(evs[4].lambda, asymptotic_eigenvalue(5).lambda);
}

TEST(FourierBessel, Orthogonality) {
  const auto evs = eigenvalues(12);
  for (const auto& a : evs) {
    for (const auto& b : evs) {
      const double c = fourier_bessel_coeff([&](double x) { return bessel_j(0, a.lambda * x); }, b);
      EXPECT_NEAR(c, a.k == b.k ? 1.0 : 0.0, 1e-11) << a.k << " " << b.k;
    }
  }
}

// 1 = sum 2/(l J1(l)) J0(l x) and 1-x^2 = sum 8/(l^3 J1(l)) J0(l x)
TEST(FourierBessel, ClosedFormCoefficients) {
  for (const auto& ev : eigenvalues(40)) {
    const double l = ev.lambda, j1 = bessel_j(1, l);
    EXPECT_NEAR(fourier_bessel_coeff([](double) { return 1.0; }, ev), 2 / (l * j1), 1e-10);
    EXPECT_NEAR(fourier_bessel_coeff([](double x) { return 1 - x * x; }, ev), 8 / (l * l * l * j1), 1e-12);
  }
}

TEST(FourierBessel, RuleOverloadMatchesAdaptive) {
  const auto ev = bessel_zero(3);
  const QuadratureRule r = gauss_jacobi(80, 0.5, 0.0);
  const RealFn g = [](double x) { return std::sqrt(x) * (1 - x); };
  const double c = fourier_bessel_coeff(g, ev, r);
  EXPECT_NEAR(fourier_bessel_coeff(g, ev), c, 1e-8 * std::fabs(c));
}

TEST(FourierBessel, AnalyzeSynthesizeRoundTrip) {
  const RealFn g = [](double x) { return std::pow(x, 4) * std::pow(1 - x, 3); };
  const CoefficientSequence c = analyze(g, eigenvalues(50));
  EXPECT_EQ(c.N(), 50);
  for (double x : {0.0, 0.13, 0.5, 0.77, 0.99}) EXPECT_NEAR(synthesize(c, x), g(x), 2e-7) << x;
  EXPECT_NEAR(synthesize(c, 1.0), 0.0, 1e-14);
  EXPECT_THROW(synthesize(c, 1.5), DomainError);
}

TEST(FourierBessel, BreakpointsResolveKinks) {
  const double cut = 0.37;
  const RealFn step = [cut](double x) { return x < cut ? 1.0 : 0.0; };
  ProjectionOptions opts;
  opts.breakpoints = {cut};
  for (int k : {1, 4, 20}) {
    const auto ev = bessel_zero(k);
    const double want = cut * bessel_j(1, cut * ev.lambda) / ev.lambda / ev.norm_sq;
    EXPECT_NEAR(fourier_bessel_coeff(step, ev, opts), want, 1e-10) << k;
  }
  EXPECT_THROW(fourier_bessel_coeff(step, bessel_zero(4)), NumericError);
}
