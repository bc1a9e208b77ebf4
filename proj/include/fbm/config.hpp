#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "fbm/solver.hpp"
#include "fbm/verify.hpp"

namespace fbm {

struct GridSpec {
  int nx = 21;
  int nt_pos = 11;  // t = 0, T/(nt_pos-1), ..., T
  int nt_neg = 10;  // t = -T, ..., -T/nt_neg
};

struct OutputPaths {
  std::string dir = ".";
  std::string solution = "solution.csv";
  std::string modes = "modes.csv";
  std::string report = "report.json";
};

struct RunConfig {
  ProblemSpec problem;
  GridSpec grid;
  OutputPaths outputs;
  VerifyOptions verify;
  bool strict_hypotheses = false;
  HypothesisReport hypotheses;  // filled by parse_config / finalize
};

// JSON config file. Relative table paths resolve against the file's directory.
RunConfig parse_config(const std::string& path);
RunConfig parse_config_text(const std::string& text, const std::string& base_dir = ".");

struct CliOverrides {
  std::optional<std::string> out_dir;
  std::optional<int> modes;
  std::optional<EigenMode> eigen;
  std::optional<DeltaVariant> delta;
  std::optional<PsiForm> psi;
  bool strict_hypotheses = false;
};

// Applies overrides, validates, and re-runs the forcing hypothesis gate.
void finalize(RunConfig& cfg, const CliOverrides& overrides = {});

EigenMode parse_eigen_mode(const std::string& s);
DeltaVariant parse_delta_variant(const std::string& s);
PsiForm parse_psi_form(const std::string& s);

inline constexpr int kExitPass = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitSolvability = 2;
inline constexpr int kExitNumeric = 3;

struct RunResult {
  int exit_code = 0;
  bool report_pass = false;
};

// Solve, verify, write the three outputs. Exit 0 iff the report passes;
// a failing report without other errors exits 3.
RunResult run(const RunConfig& cfg, std::ostream& log);

std::string report_json(const VerificationReport& rep, const RunConfig& cfg,
                        const SeriesSolution& sol);

}  // namespace fbm
