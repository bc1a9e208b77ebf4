#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <vector>

namespace fbm {

enum class RuleKind { gauss_jacobi, gauss_legendre, graded_trapezoid };

// Rule on [0,1] for the weight v^a (1-v)^b. `complement` holds 1 - v_i
// computed without cancellation.
struct QuadratureRule {
  RuleKind kind = RuleKind::gauss_legendre;
  std::vector<double> nodes;
  std::vector<double> complement;
  std::vector<double> weights;
  double a = 0.0;
  double b = 0.0;

  std::size_t size() const { return nodes.size(); }

  // sum_i w_i f(v_i), i.e. the integral of v^a (1-v)^b f(v) over [0,1]
  template <class F>
  double integrate(F&& f) const {
    double s = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) s += weights[i] * f(nodes[i]);
    return s;
  }
};

QuadratureRule gauss_jacobi(int n, double a, double b);
QuadratureRule gauss_legendre(int n);
// Trapezoid rule after the tanh-sinh grading map; handles integrable
// endpoint singularities without knowing their exponents.
QuadratureRule graded_trapezoid(int levels_per_unit, double s_max = 3.2);

// Shared immutable rules, built once per (n, a, b).
std::shared_ptr<const QuadratureRule> cached_gauss_jacobi(int n, double a, double b);

using RealFn = std::function<double(double)>;

// Integral of w^a (L-w)^b g(w) over [0, L], where g may vary on the scale
// `layer` near w = 0 and is analytic in w^q there. Geometric panels resolve
// the layer.
double integrate_layered(double a, double b, double L, double layer, const RealFn& g,
                         int panel_nodes = 24, double q = 1.0);

}  // namespace fbm
