#pragma once

#include <memory>
#include <string>
#include <vector>

namespace fbm {

// Dense polynomial, coefficients in increasing degree.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> coeffs);

  static Polynomial monomial(int degree, double c = 1.0);

  double operator()(double x) const;
  Polynomial derivative() const;
  Polynomial operator*(const Polynomial& other) const;
  Polynomial operator*(double s) const;

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<double>& coeffs() const { return c_; }
  bool is_zero() const;

 private:
  std::vector<double> c_;
};

// Samples f(x_i, t_j) on a rectangular grid, bilinear in between.
struct TabulatedField {
  std::vector<double> xs;
  std::vector<double> ts;
  std::vector<double> values;  // values[j * xs.size() + i]

  double operator()(double x, double t) const;
  double at(std::size_t i, std::size_t j) const { return values[j * xs.size() + i]; }

  // CSV with header x,t,f; rows in any order, covering the full grid.
  static TabulatedField load_csv(const std::string& path);
};

enum class HypothesisStatus { satisfied, violated, unverifiable };

struct HypothesisReport {
  HypothesisStatus status = HypothesisStatus::unverifiable;
  std::string detail;
};

std::string to_string(HypothesisStatus s);

struct Forcing {
  enum class Kind { zero, separable, tabulated };

  Kind kind = Kind::zero;
  Polynomial spatial;   // separable: f(x,t) = spatial(x) * temporal(t)
  Polynomial temporal;
  std::shared_ptr<const TabulatedField> table;

  static Forcing zero();
  static Forcing separable(Polynomial spatial, Polynomial temporal);
  // spatial profile x^4 (1-x)^3 q(x)
  static Forcing builtin(const Polynomial& q, Polynomial temporal);
  static Forcing tabulated(TabulatedField table);

  double operator()(double x, double t) const;

  // Vanishing of the value and first three x-derivatives at x = 0 and of the
  // value and first two at x = 1.
  HypothesisReport check_hypotheses() const;
};

// x^4 (1-x)^3
Polynomial builtin_profile();

}  // namespace fbm
