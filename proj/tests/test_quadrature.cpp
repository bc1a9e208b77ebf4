#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "fbm/errors.hpp"
#include "fbm/quadrature.hpp"
#include "fbm/specfun.hpp"

using namespace fbm;

namespace {

double beta_fn(double x, double y) { return std::exp(std::lgamma(x) + std::lgamma(y) - std::lgamma(x + y)); }

}  // namespace

// exact for polynomials of degree 2n-1 against the Jacobi weight
TEST(GaussJacobi, MomentsMatchBetaFunction) {
  for (auto [a, b] : {std::pair{0.0, 0.0}, {-0.5, 0.3}, {-0.8, -0.9}, {1.7, -0.4}, {48.0, 0.0}, {0.6, 2.5}}) {
    for (int n : {1, 5, 16, 64}) {
      const QuadratureRule r = gauss_jacobi(n, a, b);
      ASSERT_EQ(r.size(), static_cast<std::size_t>(n));
      for (int m = 0; m <= 2 * n - 1 && m <= 40; ++m) {
        const double got = r.integrate([m](double v) { return std::pow(v, m); });
        const double want = beta_fn(a + m + 1, b + 1);
        EXPECT_NEAR(got / want, 1.0, 1e-12) << "a=" << a << " b=" << b << " n=" << n << " m=" << m;
      }
    }
  }
}

TEST(GaussJacobi, NodesInsideAndComplementExact) {
  const QuadratureRule r = gauss_jacobi(200, -0.3, 0.7);
  for (std::size_t i = 0; i < r.size(); ++i) {
    EXPECT_GT(r.nodes[i], 0.0);
    EXPECT_LT(r.nodes[i], 1.0);
    EXPECT_GT(r.weights[i], 0.0);
    EXPECT_NEAR(r.nodes[i] + r.complement[i], 1.0, 2e-16);
    if (i > 0) EXPECT_LT(r.nodes[i - 1], r.nodes[i]);
  }
}

TEST(GaussJacobi, LargeRuleStaysAccurate) {
  const QuadratureRule r = gauss_jacobi(1024, -0.5, -0.5);
  // int v^-1/2 (1-v)^-1/2 cos(40 v) dv = pi cos(20) J0(20)
  const double got = r.integrate([](double v) { return std::cos(40 * v); });
  EXPECT_NEAR(got, std::numbers::pi * std::cos(20.0) * bessel_j(0, 20.0), 1e-13);
}

TEST(GaussJacobi, RejectsBadParameters) {
  EXPECT_THROW(gauss_jacobi(0, 0, 0), DomainError);
  EXPECT_THROW(gauss_jacobi(4, -1.0, 0), DomainError);
  EXPECT_THROW(gauss_jacobi(4, 0, -1.5), DomainError);
}

TEST(GaussJacobi, CacheSharesRules) {
  const auto a = cached_gauss_jacobi(33, 0.25, -0.5);
  const auto b = cached_gauss_jacobi(33, 0.25, -0.5);
  EXPECT_EQ(a.get(), b.get());
  EXPECT_NE(a.get(), cached_gauss_jacobi(33, 0.25, -0.4).get());
}

TEST(GaussLegendre, SymmetricUnitMass) {
  const QuadratureRule r = gauss_legendre(31);
  double s = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    s += r.weights[i];
    EXPECT_NEAR(r.nodes[i], r.complement[r.size() - 1 - i], 1e-15);
  }
  EXPECT_NEAR(s, 1.0, 1e-15);
}

TEST(GradedTrapezoid, EndpointSingularities) {
  const QuadratureRule r = graded_trapezoid(48);
  EXPECT_NEAR(r.integrate([](double v) { return 1.0 / std::sqrt(v); }), 2.0, 1e-7);
  EXPECT_NEAR(r.integrate([](double v) { return std::log(v); }), -1.0, 1e-9);
  EXPECT_NEAR(r.integrate([](double v) { return std::exp(v); }), std::numbers::e - 1.0, 1e-12);
  EXPECT_THROW(graded_trapezoid(0), DomainError);
}

TEST(IntegrateLayered, PurePowers) {
  for (double L : {1e-3, 0.7, 5.0}) {
    for (auto [a, b] : {std::pair{-0.6, 0.0}, {0.4, 0.0}, {-0.2, 0.8}}) {
      const double got = integrate_layered(a, b, L, 0.01, [](double) { return 1.0; });
      const double want = std::pow(L, a + b + 1) * beta_fn(a + 1, b + 1);
      EXPECT_NEAR(got / want, 1.0, 1e-12) << L << " " << a << " " << b;
    }
  }
}

TEST(IntegrateLayered, ExponentialLayer) {
  for (double eps : {2e-2, 1e-3, 1e-6}) {
    const double a = -0.35;
    const double got = integrate_layered(a, 0.0, 1.0, eps, [eps](double w) { return std::exp(-w / eps); });
    const double want = std::pow(eps, a + 1) * std::tgamma(a + 1);
    EXPECT_NEAR(got / want, 1.0, 1e-10) << eps;
  }
}

// int_0^L w^(b-1) E_{d,b}(-c w^d) dw = L^b E_{d,b+1}(-c L^d)
TEST(IntegrateLayered, MittagLefflerKernelMoment) {
  for (double d : {0.56, 1.3, 1.5}) {
    for (double c : {1.0, 1e2, 1e4, 2.5e5}) {
      const double b = 1.3, L = 0.8;
      const RealFn g = [&](double w) { return mittag_leffler({d, b}, -c * std::pow(w, d)); };
      const double got = integrate_layered(b - 1, 0.0, L, std::pow(c, -1.0 / d), g, 16, d);
      const double want = std::pow(L, b) * mittag_leffler({d, b + 1}, -c * std::pow(L, d));
      EXPECT_NEAR(got / want, 1.0, 1e-9) << d << " " << c;
    }
  }
}

TEST(IntegrateLayered, EmptyRangeAndBadPower) {
  EXPECT_EQ(integrate_layered(0.0, 0.0, 0.0, 1.0, [](double) { return 1.0; }), 0.0);
  EXPECT_THROW(integrate_layered(0.0, 0.0, 1.0, 1.0, [](double) { return 1.0; }, 8, 0.0), DomainError);
}
