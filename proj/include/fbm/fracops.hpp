#pragma once

#include "fbm/quadrature.hpp"

namespace fbm {

struct OperatorParams {
  double alpha1 = 0.5;
  double theta = 0.0;
  double alpha2 = 1.5;
  double beta2 = 1.5;
  double mu = 0.5;
  // derived
  double p = 1.0;
  double gamma2 = 1.75;
  double delta2 = 1.5;

  static OperatorParams make(double alpha1, double theta, double alpha2, double beta2, double mu);
  void validate() const;

  double nu() const { return (1.0 - mu) * (2.0 - beta2); }     // inner RL order
  double kappa() const { return mu * (2.0 - alpha2); }         // outer RL order
};

// Nodes per convolution, plus the power behaviour of the data at the
// singular end of the integration range (g ~ |s|^end_exponent).
struct KernelQuadrature {
  int nodes = 256;
  double end_exponent = 0.0;
};

// (1/Gamma(sigma)) * integral over [t,0] of (s-t)^(sigma-1) g(s) ds, t < 0.
double rl_integral_right(double sigma, const RealFn& g, double t, const QuadratureRule& rule);
double rl_integral_right(double sigma, const RealFn& g, double t, KernelQuadrature q = {});

// Erdelyi-Kober integral I^{gamma,delta}_beta g at t > 0.
double ek_integral(double gamma, double delta, double beta, const RealFn& g, double t,
                   const QuadratureRule& rule);
double ek_integral(double gamma, double delta, double beta, const RealFn& g, double t,
                   KernelQuadrature q = {});

// prod_{j=1..n} (gamma + j + (t/beta) d/dt) I^{gamma+delta, n-delta}_beta g, n = ceil(delta) <= 2.
// Outer derivatives by central differences in log t.
double ek_derivative(double gamma, double delta, double beta, const RealFn& g, double t,
                     KernelQuadrature q = {});

// p^a t^{-a p} D^{-a,a}_p (u - u0) with a = alpha1, p = 1 - theta.
double hyper_bessel_caputo(const OperatorParams& op, const RealFn& u, double u0, double t,
                           KernelQuadrature q = {});

struct HilferQuadrature {
  KernelQuadrature inner;  // end exponent of u at s -> 0-
  KernelQuadrature outer;  // end exponent of (I^nu u)'' at s -> 0-
};

// I^{mu(2-alpha2)}_{0-} (d/dt)^2 I^{(1-mu)(2-beta2)}_{0-} u at t < 0.
double bi_ordinal_hilfer(const OperatorParams& op, const RealFn& u, double t,
                         HilferQuadrature q = {});

}  // namespace fbm
