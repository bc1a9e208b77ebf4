#pragma once

// Scalar special functions used throughout the solver: Gamma, integer-order
// Bessel functions of the first kind and the two-parameter Mittag-Leffler
// function on the real line.

namespace fbm {

/// Gamma function. Throws DomainError at the poles 0, -1, -2, ...
double gamma(double x);

/// Reciprocal Gamma function; entire, so it returns exactly 0 at the poles.
double rgamma(double x);

/// J_order(x) for order in {0, 1, 2} and x >= 0.
double bessel_j(int order, double x);

struct MLParams {
  double alpha;  // 0 < alpha <= 2
  double beta;
};

/// E_{alpha,beta}(z) = sum_n z^n / Gamma(alpha n + beta) for real z.
///
/// Evaluation regimes are selected by rho = |z|^(1/alpha):
///   rho <= 8   power series in long double,
///   rho <= 40  power series in binary128 (absorbs the cancellation of the
///              alternating series for z < 0),
///   rho >  40  algebraic asymptotic expansion with optimal truncation plus
///              the exponential contributions of the roots zeta^alpha = z
///              lying in the principal sheet (present for 1 <= alpha <= 2).
/// Accurate to ~1e-13 relative wherever the function is not close to one of
/// its real zeros.
double mittag_leffler(MLParams p, double z);

/// Regime boundaries in rho = |z|^(1/alpha); exposed for tests.
inline constexpr double kMLLongDoubleRho = 8.0;
inline constexpr double kMLQuadRho = 40.0;

}  // namespace fbm
