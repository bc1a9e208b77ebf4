#include "fbm/config.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "fbm/errors.hpp"
#include "json.hpp"

namespace fbm {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::pair<int, int> line_col(const std::string& text, std::size_t byte) {
  int line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

void reject_unknown(const json& obj, const std::string& where, std::initializer_list<const char*> keys) {
  const std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& [k, v] : obj.items()) {
    if (!allowed.count(k)) throw ConfigError(where + ": unknown key '" + k + "'");
  }
}

const json& object_at(const json& parent, const char* key, const std::string& where) {
  const json& v = parent.at(key);
  if (!v.is_object()) throw ConfigError(where + "." + key + ": expected an object");
  return v;
}

template <class T>
T get(const json& obj, const char* key, const std::string& where, T fallback) {
  if (!obj.contains(key)) return fallback;
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(where + "." + key + ": wrong type");
  }
}

Polynomial poly(const json& obj, const char* key, const std::string& where, std::vector<double> fallback) {
  return Polynomial(get<std::vector<double>>(obj, key, where, std::move(fallback)));
}

Forcing parse_forcing(const json& f, const std::string& base_dir) {
  const std::string where = "forcing";
  const std::string type = get<std::string>(f, "type", where, "builtin");
  if (type == "zero") {
    reject_unknown(f, where, {"type"});
    return Forcing::zero();
  }
  if (type == "builtin") {
    reject_unknown(f, where, {"type", "q", "temporal"});
    return Forcing::builtin(poly(f, "q", where, {1.0}), poly(f, "temporal", where, {1.0}));
  }
  if (type == "polynomial") {
    reject_unknown(f, where, {"type", "spatial", "temporal"});
    if (!f.contains("spatial")) throw ConfigError("forcing.spatial: required for polynomial forcing");
    return Forcing::separable(poly(f, "spatial", where, {}), poly(f, "temporal", where, {1.0}));
  }
  if (type == "table") {
    reject_unknown(f, where, {"type", "path"});
    fs::path p = get<std::string>(f, "path", where, "");
    if (p.empty()) throw ConfigError("forcing.path: required for table forcing");
    if (p.is_relative()) p = fs::path(base_dir) / p;
    return Forcing::tabulated(TabulatedField::load_csv(p.string()));
  }
  throw ConfigError("forcing.type: expected zero, builtin, polynomial or table (got '" + type + "')");
}

}  // namespace

EigenMode parse_eigen_mode(const std::string& s) {
  if (s == "true" || s == "true-zeros") return EigenMode::true_zeros;
  if (s == "asymptotic") return EigenMode::asymptotic;
  throw ConfigError("eigen: expected true-zeros or asymptotic (got '" + s + "')");
}

DeltaVariant parse_delta_variant(const std::string& s) {
  if (s == "consistent") return DeltaVariant::consistent;
  if (s == "paper-literal") return DeltaVariant::paper_literal;
  throw ConfigError("delta_variant: expected consistent or paper-literal (got '" + s + "')");
}

PsiForm parse_psi_form(const std::string& s) {
  if (s == "exact") return PsiForm::exact;
  if (s == "printed") return PsiForm::printed;
  throw ConfigError("psi_form: expected exact or printed (got '" + s + "')");
}

RunConfig parse_config_text(const std::string& text, const std::string& base_dir) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_col(text, e.byte == 0 ? 0 : e.byte - 1);
    std::ostringstream os;
    os << "line " << line << ", column " << col << ": malformed JSON";
    throw ConfigError(os.str());
  }
  if (!doc.is_object()) throw ConfigError("top level: expected an object");
  reject_unknown(doc, "config", {"operator", "T", "nonlocal", "forcing", "modes", "eigen", "delta_variant",
                                 "psi_form", "delta_floor", "threads", "grid", "outputs", "tolerances",
                                 "verify", "strict_hypotheses"});

  RunConfig cfg;
  ProblemSpec& ps = cfg.problem;

  double a1 = 0.5, th = 0.0, a2 = 1.5, b2 = 1.5, mu = 0.5;
  if (doc.contains("operator")) {
    const json& op = object_at(doc, "operator", "config");
    reject_unknown(op, "operator", {"alpha1", "theta", "alpha2", "beta2", "mu"});
    a1 = get(op, "alpha1", "operator", a1);
    th = get(op, "theta", "operator", th);
    a2 = get(op, "alpha2", "operator", a2);
    b2 = get(op, "beta2", "operator", b2);
    mu = get(op, "mu", "operator", mu);
  }
  try {
    ps.op = OperatorParams::make(a1, th, a2, b2, mu);
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  ps.T = get(doc, "T", "config", 1.0);

  ps.nonlocal.clear();
  if (doc.contains("nonlocal")) {
    const json& nl = doc.at("nonlocal");
    if (!nl.is_array()) throw ConfigError("nonlocal: expected an array of {p, xi}");
    for (std::size_t i = 0; i < nl.size(); ++i) {
      const std::string where = "nonlocal[" + std::to_string(i) + "]";
      if (!nl[i].is_object()) throw ConfigError(where + ": expected an object");
      reject_unknown(nl[i], where, {"p", "xi"});
      if (!nl[i].contains("p") || !nl[i].contains("xi")) throw ConfigError(where + ": needs p and xi");
      ps.nonlocal.push_back({get(nl[i], "p", where, 0.0), get(nl[i], "xi", where, 0.0)});
    }
  } else {
    ps.nonlocal = {{0.5, -0.5 * ps.T}};
  }

  ps.forcing = doc.contains("forcing") ? parse_forcing(object_at(doc, "forcing", "config"), base_dir)
                                       : Forcing::builtin(Polynomial({1.0}), Polynomial({1.0}));
  ps.N = get(doc, "modes", "config", 50);
  ps.variants.eigen = parse_eigen_mode(get<std::string>(doc, "eigen", "config", "true-zeros"));
  ps.variants.delta = parse_delta_variant(get<std::string>(doc, "delta_variant", "config", "consistent"));
  ps.variants.psi = parse_psi_form(get<std::string>(doc, "psi_form", "config", "exact"));
  ps.variants.delta_floor = get(doc, "delta_floor", "config", ps.variants.delta_floor);
  ps.threads = get(doc, "threads", "config", 0);

  if (doc.contains("grid")) {
    const json& g = object_at(doc, "grid", "config");
    reject_unknown(g, "grid", {"nx", "nt_pos", "nt_neg"});
    cfg.grid.nx = get(g, "nx", "grid", cfg.grid.nx);
    cfg.grid.nt_pos = get(g, "nt_pos", "grid", cfg.grid.nt_pos);
    cfg.grid.nt_neg = get(g, "nt_neg", "grid", cfg.grid.nt_neg);
  }
  if (doc.contains("outputs")) {
    const json& o = object_at(doc, "outputs", "config");
    reject_unknown(o, "outputs", {"dir", "solution", "modes", "report"});
    cfg.outputs.dir = get(o, "dir", "outputs", cfg.outputs.dir);
    cfg.outputs.solution = get(o, "solution", "outputs", cfg.outputs.solution);
    cfg.outputs.modes = get(o, "modes", "outputs", cfg.outputs.modes);
    cfg.outputs.report = get(o, "report", "outputs", cfg.outputs.report);
  }
  VerifyOptions& v = cfg.verify;
  if (doc.contains("tolerances")) {
    const json& t = object_at(doc, "tolerances", "config");
    reject_unknown(t, "tolerances", {"boundary", "gluing", "nonlocal", "ode"});
    v.boundary_tol = get(t, "boundary", "tolerances", v.boundary_tol);
    v.gluing_tol = get(t, "gluing", "tolerances", v.gluing_tol);
    v.nonlocal_tol = get(t, "nonlocal", "tolerances", v.nonlocal_tol);
    v.ode_tol = get(t, "ode", "tolerances", v.ode_tol);
  }
  if (doc.contains("verify")) {
    const json& t = object_at(doc, "verify", "config");
    reject_unknown(t, "verify", {"ode_modes", "ode_nodes", "oracle_nodes", "delta_ks", "decay_k_min"});
    v.ode_k_max = get(t, "ode_modes", "verify", v.ode_k_max);
    v.ode_nodes = get(t, "ode_nodes", "verify", v.ode_nodes);
    v.oracle_nodes = get(t, "oracle_nodes", "verify", v.oracle_nodes);
    v.delta_ks = get(t, "delta_ks", "verify", v.delta_ks);
    v.decay_k_min = get(t, "decay_k_min", "verify", v.decay_k_min);
  }
  cfg.strict_hypotheses = get(doc, "strict_hypotheses", "config", false);
  finalize(cfg);
  return cfg;
}

RunConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const fs::path dir = fs::path(path).parent_path();
  return parse_config_text(buf.str(), dir.empty() ? "." : dir.string());
}

void finalize(RunConfig& cfg, const CliOverrides& o) {
  if (o.out_dir) cfg.outputs.dir = *o.out_dir;
  if (o.modes) cfg.problem.N = *o.modes;
  if (o.eigen) cfg.problem.variants.eigen = *o.eigen;
  if (o.delta) cfg.problem.variants.delta = *o.delta;
  if (o.psi) cfg.problem.variants.psi = *o.psi;
  if (o.strict_hypotheses) cfg.strict_hypotheses = true;

  try {
    cfg.problem.validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  if (cfg.grid.nx < 2 || cfg.grid.nt_pos < 2 || cfg.grid.nt_neg < 2) {
    throw ConfigError("grid: nx, nt_pos and nt_neg must be at least 2");
  }
  if (cfg.verify.ode_k_max < 0 || cfg.verify.oracle_nodes < 8 || cfg.verify.ode_nodes < 8) {
    throw ConfigError("verify: node counts must be at least 8 and ode_modes non-negative");
  }
  cfg.hypotheses = cfg.problem.forcing.check_hypotheses();
  if (cfg.strict_hypotheses && cfg.hypotheses.status == HypothesisStatus::violated) {
    throw ConfigError("forcing hypotheses not satisfied: " + cfg.hypotheses.detail);
  }
}

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::string variant_name(DeltaVariant v) { return v == DeltaVariant::consistent ? "consistent" : "paper-literal"; }
std::string variant_name(EigenMode m) { return m == EigenMode::true_zeros ? "true-zeros" : "asymptotic"; }
std::string variant_name(PsiForm f) { return f == PsiForm::exact ? "exact" : "printed"; }

void write_file(const fs::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path.string() + "'");
  out << body;
  if (!out) throw ConfigError("write failed for '" + path.string() + "'");
}

std::string solution_csv(const SeriesSolution& sol, const GridSpec& g) {
  const double T = sol.spec.T;
  std::vector<double> ts;
  for (int j = 0; j < g.nt_neg; ++j) ts.push_back(-T + T * j / g.nt_neg);
  for (int j = 0; j < g.nt_pos; ++j) ts.push_back(T * j / (g.nt_pos - 1));
  std::string out = "x,t,u,u_x,u_xx\n";
  for (double t : ts) {
    const auto a = sol.mode_values(t);
    for (int i = 0; i < g.nx; ++i) {
      const double x = static_cast<double>(i) / (g.nx - 1);
      out += num(x) + ',' + num(t) + ',' + num(sol.synthesize(a, x)) + ',';
      if (i > 0) {
        const auto d = sol.synthesize_derivatives(a, x);
        out += num(d.u_x) + ',' + num(d.u_xx);
      } else {
        out += ',';
      }
      out += '\n';
    }
  }
  return out;
}

std::string modes_csv(const SeriesSolution& sol) {
  std::string out = "k,lambda,Delta,F,tau,psi\n";
  for (const auto& m : sol.modes) {
    out += std::to_string(m.ev.k) + ',' + num(m.ev.lambda) + ',' + num(m.Delta) + ',' + num(m.F) + ',' +
           num(m.tau) + ',' + num(m.psi) + '\n';
  }
  return out;
}

}  // namespace

std::string report_json(const VerificationReport& rep, const RunConfig& cfg, const SeriesSolution& sol) {
  const ProblemSpec& ps = cfg.problem;
  json j;
  j["overall"] = rep.overall();
  j["hypotheses"] = {{"status", to_string(cfg.hypotheses.status)}, {"detail", cfg.hypotheses.detail}};
  j["problem"] = {
      {"operator",
       {{"alpha1", ps.op.alpha1}, {"theta", ps.op.theta}, {"alpha2", ps.op.alpha2}, {"beta2", ps.op.beta2},
        {"mu", ps.op.mu}, {"p", ps.op.p}, {"gamma2", ps.op.gamma2}, {"delta2", ps.op.delta2}}},
      {"T", ps.T},
      {"modes", ps.N},
      {"eigen", variant_name(ps.variants.eigen)},
      {"delta_variant", variant_name(ps.variants.delta)},
      {"psi_form", variant_name(ps.variants.psi)},
      {"delta_limit", delta_limit(ps)}};
  j["tail_estimate"] = sol.tail_estimate;
  json checks = json::array();
  for (const auto& c : rep.checks) {
    checks.push_back({{"name", c.name},
                      {"anchor", c.anchor},
                      {"target", finite_or_null(c.target)},
                      {"measured", finite_or_null(c.measured)},
                      {"tolerance", finite_or_null(c.tolerance)},
                      {"status", to_string(c.status)},
                      {"pass", c.passed()},
                      {"note", c.note}});
  }
  j["checks"] = checks;
  return j.dump(2) + "\n";
}

RunResult run(const RunConfig& cfg, std::ostream& log) {
  RunResult res;
  if (cfg.hypotheses.status != HypothesisStatus::satisfied) {
    log << "warning: forcing hypotheses " << to_string(cfg.hypotheses.status) << ": " << cfg.hypotheses.detail
        << "\n";
  }
  try {
    const SeriesSolution sol = solve_modes(cfg.problem);
    const VerificationReport rep = verify(sol, cfg.verify);
    res.report_pass = rep.overall();

    const fs::path dir = cfg.outputs.dir;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw ConfigError("cannot create output directory '" + dir.string() + "': " + ec.message());
    write_file(dir / cfg.outputs.solution, solution_csv(sol, cfg.grid));
    write_file(dir / cfg.outputs.modes, modes_csv(sol));
    write_file(dir / cfg.outputs.report, report_json(rep, cfg, sol));

    for (const auto& c : rep.checks) {
      if (!c.passed()) log << "check failed: " << c.name << " measured " << c.measured << " tolerance " << c.tolerance
                           << "\n";
    }
    log << "verification " << (res.report_pass ? "passed" : "failed") << " (" << rep.checks.size() << " checks)\n";
    res.exit_code = res.report_pass ? kExitPass : kExitNumeric;
  } catch (const SolvabilityError& e) {
    log << "solvability failure: " << e.what() << "\n";
    res.exit_code = kExitSolvability;
  } catch (const NumericError& e) {
    log << "numeric failure: " << e.what() << "\n";
    res.exit_code = kExitNumeric;
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << "\n";
    res.exit_code = kExitConfig;
  } catch (const DomainError& e) {
    log << "config error: " << e.what() << "\n";
    res.exit_code = kExitConfig;
  }
  return res;
}

}  // namespace fbm
