#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "fbm/config.hpp"
#include "fbm/errors.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Fourier-Bessel solver for the mixed hyper-Bessel / Hilfer problem"};
  app.require_subcommand(1);

  CLI::App* solve = app.add_subcommand("solve", "Solve, verify and write outputs for one config");
  std::string config_path;
  fbm::CliOverrides ov;
  std::string out_dir, eigen, delta, psi;
  int modes = 0;
  solve->add_option("config", config_path, "JSON problem file")->required();
  solve->add_option("--out-dir", out_dir, "Directory for solution.csv, modes.csv, report.json");
  solve->add_option("--modes", modes, "Number of Fourier-Bessel modes")->check(CLI::PositiveNumber);
  solve->add_option("--eigen", eigen, "Eigenvalues: true zeros of J0 or pi k - pi/4")
      ->check(CLI::IsMember({"asymptotic", "true"}));
  solve->add_option("--delta-variant", delta, "Mittag-Leffler argument at the non-local points")
      ->check(CLI::IsMember({"consistent", "paper-literal"}));
  solve->add_option("--psi-form", psi, "Derivative trace coefficient")
      ->check(CLI::IsMember({"exact", "printed"}));
  solve->add_flag("--strict-hypotheses", ov.strict_hypotheses,
                  "Reject forcing that violates the vanishing conditions");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : fbm::kExitConfig;
  }

  fbm::RunConfig cfg;
  try {
    if (!out_dir.empty()) ov.out_dir = out_dir;
    if (modes > 0) ov.modes = modes;
    if (!eigen.empty()) ov.eigen = fbm::parse_eigen_mode(eigen);
    if (!delta.empty()) ov.delta = fbm::parse_delta_variant(delta);
    if (!psi.empty()) ov.psi = fbm::parse_psi_form(psi);
    cfg = fbm::parse_config(config_path);
    fbm::finalize(cfg, ov);
  } catch (const fbm::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return fbm::kExitConfig;
  }
  std::cerr << "forcing hypotheses: " << fbm::to_string(cfg.hypotheses.status) << " ("
            << cfg.hypotheses.detail << ")\n";
  return fbm::run(cfg, std::cerr).exit_code;
}
