#pragma once

#include <optional>
#include <vector>

#include "fbm/forcing.hpp"
#include "fbm/fracops.hpp"
#include "fbm/spectrum.hpp"

namespace fbm {

enum class DeltaVariant { consistent, paper_literal };
// How psi_k follows from tau_k: `exact` enforces the derivative gluing
// condition, `printed` uses -lambda^2 tau / (p^a Gamma(a)).
enum class PsiForm { exact, printed };

struct NonlocalPoint {
  double p = 0.0;
  double xi = 0.0;
};

struct Variants {
  EigenMode eigen = EigenMode::true_zeros;
  DeltaVariant delta = DeltaVariant::consistent;
  PsiForm psi = PsiForm::exact;
  double delta_floor = 1e-10;
};

struct ProblemSpec {
  OperatorParams op;
  double T = 1.0;
  std::vector<NonlocalPoint> nonlocal;
  Forcing forcing;
  int N = 50;
  Variants variants;
  int threads = 0;  // 0: hardware concurrency

  void validate() const;
};

// Time coefficient f_k(t): a polynomial for separable forcing, otherwise
// piecewise linear between table times.
struct ModeForcing {
  std::optional<Polynomial> poly;
  std::vector<double> ts;
  std::vector<double> values;

  double operator()(double t) const;
  bool is_zero() const;
};

struct ModeRecord {
  Eigenvalue ev;
  ModeForcing f;
  double Delta = 0.0;
  double F = 0.0;
  double tau = 0.0;
  double phi = 0.0;
  double psi = 0.0;
  // psi = psi_slope * tau + psi_shift
  double psi_slope = 0.0;
  double psi_shift = 0.0;
};

// Moment route needs a polynomial f_k; quadrature works for any forcing.
enum class Route { automatic, moments, quadrature };

ModeForcing project_forcing(const Forcing& forcing, const Eigenvalue& ev);
// d psi_k / d tau_k under the selected psi form.
double psi_slope(const ProblemSpec& spec, double lambda);
ModeRecord make_mode(const ProblemSpec& spec, const Eigenvalue& ev);

double compute_Gk(const ModeRecord& mode, const ProblemSpec& spec, double t,
                  Route route = Route::automatic);
double compute_Fk(const ModeRecord& mode, const ProblemSpec& spec, Route route = Route::automatic);
double compute_Delta_k(const ModeRecord& mode, const ProblemSpec& spec);
double compute_Delta_k(const ModeRecord& mode, const ProblemSpec& spec, DeltaVariant variant);
// k -> infinity limit of Delta_k under the spec's variants.
double delta_limit(const ProblemSpec& spec);

// Convolution integral over [s, 0] of (z-s)^(b-1) E_{d,b}(-lambda^2 (z-s)^d) f_k(z) dz, s <= 0.
double mode_convolution(const ModeRecord& mode, const ProblemSpec& spec, double b, double s,
                        Route route = Route::automatic);

// Per-mode time amplitude u_k(t); t = 0 gives tau_k.
double mode_value(const ModeRecord& mode, const ProblemSpec& spec, double t,
                  Route route = Route::automatic);
// u_k(t) - tau_k for t > 0, free of the cancellation at small t.
double mode_increment(const ModeRecord& mode, const ProblemSpec& spec, double t,
                      Route route = Route::automatic);
// I^{(1-mu)(2-beta2)}_{0-} u_k at t <= 0 via the shift identity for the
// Mittag-Leffler terms.
double mode_rl_trace(const ModeRecord& mode, const ProblemSpec& spec, double t,
                     Route route = Route::automatic);

struct SpatialDerivatives {
  double u_x = 0.0;
  double u_xx = 0.0;
};

struct SeriesSolution {
  ProblemSpec spec;
  std::vector<ModeRecord> modes;
  double tail_estimate = 0.0;

  std::vector<double> mode_values(double t) const;
  double synthesize(const std::vector<double>& amplitudes, double x) const;
  SpatialDerivatives synthesize_derivatives(const std::vector<double>& amplitudes, double x) const;

  double eval_u(double x, double t) const;
  SpatialDerivatives eval_u_derivatives(double x, double t) const;
};

// Throws SolvabilityError listing every k with |Delta_k| below the floor.
SeriesSolution solve_modes(const ProblemSpec& spec);

}  // namespace fbm
