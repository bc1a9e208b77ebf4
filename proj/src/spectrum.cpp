#include "fbm/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "fbm/errors.hpp"
#include "fbm/specfun.hpp"

namespace fbm {

namespace {

int projection_order(int k) { return std::max(64, 8 * k); }

struct Projection {
  double value = 0.0;
  double scale = 0.0;
};

Projection project_panel(const RealFn& g, double lambda, double lo, double hi, int n) {
  const auto rule = cached_gauss_jacobi(n, 0.0, 0.0);
  const double len = hi - lo;
  Projection out;
  for (std::size_t i = 0; i < rule->size(); ++i) {
    const double x = lo + len * rule->nodes[i];
    const double term = rule->weights[i] * x * g(x) * bessel_j(0, lambda * x);
    out.value += term;
    out.scale += std::fabs(term);
  }
  out.value *= len;
  out.scale *= len;
  return out;
}

Projection project(const RealFn& g, double lambda, const std::vector<double>& cuts, int n) {
  Projection total;
  for (std::size_t j = 0; j + 1 < cuts.size(); ++j) {
    const double len = cuts[j + 1] - cuts[j];
    const int nj = std::max(16, static_cast<int>(std::ceil(n * len)) + 8);
    const Projection p = project_panel(g, lambda, cuts[j], cuts[j + 1], nj);
    total.value += p.value;
    total.scale += p.scale;
  }
  return total;
}

}  // namespace

Eigenvalue bessel_zero(int k) {
  if (k < 1) throw DomainError("bessel_zero: k must be positive");
  const double b = std::numbers::pi * (k - 0.25);
  double x = b + 1.0 / (8.0 * b) - 31.0 / (384.0 * b * b * b);
  // J0 has exactly one zero in (b - 1, b + 1) for every k
  double lo = std::max(b - 1.0, 1e-3), hi = b + 1.0;
  for (int it = 0; it < 60; ++it) {
    const double f = bessel_j(0, x);
    const double df = -bessel_j(1, x);
    if (f == 0.0) break;
    if (f * bessel_j(0, lo) > 0) {
      lo = x;
    } else {
      hi = x;
    }
    double next = x - f / df;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const bool done = std::fabs(next - x) <= 4e-16 * x;
    x = next;
    if (done) break;
  }
  const double j1 = bessel_j(1, x);
  return {k, x, 0.5 * j1 * j1};
}

Eigenvalue asymptotic_eigenvalue(int k) {
  if (k < 1) throw DomainError("asymptotic_eigenvalue: k must be positive");
  const double x = std::numbers::pi * k - std::numbers::pi / 4.0;
  const double j1 = bessel_j(1, x);
  return {k, x, 0.5 * j1 * j1};
}

std::vector<Eigenvalue> eigenvalues(int n, EigenMode mode) {
  std::vector<Eigenvalue> out;
  out.reserve(std::max(n, 0));
  for (int k = 1; k <= n; ++k) {
    out.push_back(mode == EigenMode::true_zeros ? bessel_zero(k) : asymptotic_eigenvalue(k));
  }
  return out;
}

double fourier_bessel_coeff(const RealFn& g, const Eigenvalue& ev, const QuadratureRule& rule) {
  double s = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double x = rule.nodes[i];
    s += rule.weights[i] * std::pow(x, -rule.a) * std::pow(rule.complement[i], -rule.b) * x * g(x) *
         bessel_j(0, ev.lambda * x);
  }
  return s / ev.norm_sq;
}

double fourier_bessel_coeff(const RealFn& g, const Eigenvalue& ev, const ProjectionOptions& opts) {
  std::vector<double> cuts{0.0};
  for (double b : opts.breakpoints) {
    if (b > 0.0 && b < 1.0) cuts.push_back(b);
  }
  cuts.push_back(1.0);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  const int n = projection_order(ev.k);
  const Projection coarse = project(g, ev.lambda, cuts, n);
  const Projection fine = project(g, ev.lambda, cuts, n + n / 2);
  const double err = std::fabs(fine.value - coarse.value);
  if (err > opts.tol * std::max(fine.scale, 1e-300)) {
    std::ostringstream os;
    os << "fourier_bessel_coeff: projection for k=" << ev.k << " not converged (estimate " << err
       << ")";
    throw NumericError(os.str());
  }
  return fine.value / ev.norm_sq;
}

CoefficientSequence analyze(const RealFn& g, const std::vector<Eigenvalue>& modes,
                            const ProjectionOptions& opts) {
  CoefficientSequence out;
  out.modes = modes;
  out.values.reserve(modes.size());
  for (const auto& ev : modes) out.values.push_back(fourier_bessel_coeff(g, ev, opts));
  return out;
}

double synthesize(const CoefficientSequence& coeffs, double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("synthesize: x must lie in [0,1]");
  double s = 0.0;
  for (std::size_t i = 0; i < coeffs.values.size(); ++i) {
    s += coeffs.values[i] * bessel_j(0, coeffs.modes[i].lambda * x);
  }
  return s;
}

}  // namespace fbm
