#pragma once

#include <vector>

#include "fbm/quadrature.hpp"

namespace fbm {

enum class EigenMode { true_zeros, asymptotic };

struct Eigenvalue {
  int k = 0;
  double lambda = 0.0;
  double norm_sq = 0.0;  // J1(lambda)^2 / 2
};

// k-th positive zero of J0: McMahon seed refined by safeguarded Newton.
Eigenvalue bessel_zero(int k);
// lambda_k = pi k - pi/4 taken verbatim.
Eigenvalue asymptotic_eigenvalue(int k);
std::vector<Eigenvalue> eigenvalues(int n, EigenMode mode = EigenMode::true_zeros);

struct CoefficientSequence {
  std::vector<double> values;
  std::vector<Eigenvalue> modes;
  int N() const { return static_cast<int>(values.size()); }
};

struct ProjectionOptions {
  // Interior kinks of g; each sub-interval gets its own Gauss-Legendre panel.
  std::vector<double> breakpoints;
  // Relative tolerance on the embedded error estimate.
  double tol = 1e-8;
};

// (1/norm_sq) * integral of x g(x) J0(lambda x) over [0,1].
double fourier_bessel_coeff(const RealFn& g, const Eigenvalue& ev, const QuadratureRule& rule);
double fourier_bessel_coeff(const RealFn& g, const Eigenvalue& ev,
                            const ProjectionOptions& opts = {});

CoefficientSequence analyze(const RealFn& g, const std::vector<Eigenvalue>& modes,
                            const ProjectionOptions& opts = {});
double synthesize(const CoefficientSequence& coeffs, double x);

}  // namespace fbm
