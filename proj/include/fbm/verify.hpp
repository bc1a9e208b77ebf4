#pragma once

#include <string>
#include <vector>

#include "fbm/solver.hpp"

namespace fbm {

enum class CheckStatus { pass, fail, inconclusive, report_only };

std::string to_string(CheckStatus s);

struct Check {
  std::string name;
  std::string anchor;  // the claim being checked, in words
  double target = 0.0;
  double measured = 0.0;
  double tolerance = 0.0;
  CheckStatus status = CheckStatus::fail;
  std::string note;

  bool passed() const { return status != CheckStatus::fail; }
};

struct VerificationReport {
  std::vector<Check> checks;

  // Inconclusive and report-only entries do not fail the report.
  bool overall() const;
  const Check* find(const std::string& name) const;
};

struct VerifyOptions {
  double boundary_tol = 1e-4;
  double gluing_tol = 1e-3;    // relative to the solution norm
  double nonlocal_tol = 1e-5;  // relative to the solution norm
  double ode_tol = 1e-3;
  int ode_k_max = 10;
  int ode_nodes = 48;
  int oracle_nodes = 256;
  std::vector<int> delta_ks = {10, 25, 50, 100, 200};
  int decay_k_min = 10;
  int decay_min_modes = 30;
  bool concurrent = true;
};

// max |u| over x in {0, 0.1, ..., 1} and t in {0, +-T/8, ..., +-T}.
double solution_norm(const SeriesSolution& sol);

std::vector<Check> check_boundary(const SeriesSolution& sol, const VerifyOptions& opts = {});
std::vector<Check> check_gluing(const SeriesSolution& sol, const VerifyOptions& opts = {});
std::vector<Check> check_nonlocal(const SeriesSolution& sol, const VerifyOptions& opts = {});
std::vector<Check> check_mode_odes(const SeriesSolution& sol, int k_max,
                                   const VerifyOptions& opts = {});
std::vector<Check> check_delta_asymptote(const ProblemSpec& spec, const std::vector<int>& ks);
// sup over z <= 0 of (1+|z|)|E_{a,b}(z)| for the kernels used by the solver
std::vector<Check> check_ml_bound(const ProblemSpec& spec);
std::vector<Check> check_decay_rates(const SeriesSolution& sol, const VerifyOptions& opts = {});

// Least-squares slope of log|v_k| against log lambda_k over modes with k >= k_min.
double loglog_slope(const std::vector<double>& lambdas, const std::vector<double>& values,
                    int k_min);

VerificationReport verify(const SeriesSolution& sol, const VerifyOptions& opts = {});

}  // namespace fbm
