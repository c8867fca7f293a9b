// Batch driver for time scans, grid dumps, moment tables, reconstructions and
// the identity suite.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "kitten/config.hpp"
#include "kitten/density.hpp"
#include "kitten/errors.hpp"
#include "kitten/fit.hpp"
#include "kitten/moments.hpp"
#include "kitten/parallel.hpp"
#include "kitten/phase_space.hpp"
#include "kitten/reference.hpp"
#include "kitten/report.hpp"
#include "kitten/validation.hpp"

namespace fs = std::filesystem;
using namespace kitten;

namespace {

enum Exit { kOk = 0, kIo = 1, kValidation = 2, kParse = 3, kNumerical = 4 };

std::string out_path(const RunConfig& cfg, const std::string& name) {
  std::error_code ec;
  fs::create_directories(cfg.out, ec);
  if (ec || !fs::is_directory(cfg.out)) throw IoError("cannot create output directory '" + cfg.out + "'");
  return (fs::path(cfg.out) / name).string();
}

void write_out(const RunConfig& cfg, const std::string& name, const std::string& text) {
  const std::string path = out_path(cfg, name);
  write_file(path, text);
  std::cout << "wrote " << path << "\n";
}

std::shared_ptr<const ModeData> build_mode(const RunConfig& cfg) {
  return std::make_shared<const ModeData>(
      ModeData::build(cfg.system, cfg.state, cfg.n_max, cfg.tail_tol));
}

std::string csv_row(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += format_number(v[i]);
  }
  return s + "\n";
}

int cmd_evolve(const RunConfig& cfg) {
  const auto mode = build_mode(cfg);
  const PhaseGrid grid = cfg.grid();
  std::unique_ptr<OscillatorDM> reference;
  if (cfg.reference_time) reference = std::make_unique<OscillatorDM>(oscillator_dm(mode, *cfg.reference_time));
  std::string text = "omega_t,S,S_Q,delta_W,purity";
  if (reference) text += ",d_HS";
  text += "\n";
  for (double t : cfg.time.times()) {
    const OscillatorDM rho = oscillator_dm(mode, t);
    std::vector<double> row{t, von_neumann_entropy(rho), wehrl_entropy(husimi(*mode, t, grid)),
                            negativity(wigner(*mode, t, grid)), rho.purity()};
    if (reference) row.push_back(hs_distance(rho, *reference));
    text += csv_row(row);
  }
  write_out(cfg, "evolve.csv", text);
  return kOk;
}

std::string profile_dump(const RVector& prof) {
  std::string s = "theta_deg,value\n";
  const Eigen::Index m = prof.size();
  for (Eigen::Index j = 0; j < m; ++j) s += csv_row({360.0 * j / m, prof[j]});
  return s;
}

int cmd_grid(const RunConfig& cfg) {
  const double t = cfg.single_time();
  const auto mode = build_mode(cfg);
  const std::string base = "grid_" + cfg.kind;
  std::string side = "kind = " + cfg.kind + "\nomega_t = " + format_number(t) + "\n";
  auto add = [&](const std::string& k, double v) { side += k + " = " + format_number(v) + "\n"; };
  if (cfg.kind == "angular" || cfg.kind == "angular-husimi") {
    const RVector prof = cfg.kind == "angular" ? angular_distribution(*mode, t, cfg.samples)
                                               : angular_husimi(*mode, t, cfg.samples);
    add("integral", prof.sum() * 2.0 * kPi / cfg.samples);
    const auto peaks = circular_peaks(prof);
    side += "peaks = " + std::to_string(peaks.size()) + "\n";
    std::string where;
    for (std::size_t i = 0; i < peaks.size(); ++i) {
      if (i) where += ",";
      where += format_number(360.0 * peaks[i] / cfg.samples);
    }
    side += "peak_deg = " + where + "\n";
    write_out(cfg, base + ".csv", profile_dump(prof));
  } else {
    const PhaseGrid grid = cfg.grid();
    PhaseGrid g;
    if (cfg.kind == "wigner") {
      g = wigner(*mode, t, grid);
      add("integral", g.integral());
      add("negativity", negativity(g));
    } else if (cfg.kind == "husimi") {
      g = husimi(*mode, t, grid);
      add("integral", g.integral());
      add("wehrl_entropy", wehrl_entropy(g));
    } else {
      const LinearApproxParams lin = LinearApproxParams::from(cfg.system, cfg.state);
      g = husimi_linear(*mode, lin, t, grid);
      add("integral", g.integral());
      add("wehrl_entropy", wehrl_entropy(g));
      add("q_deviation", q_deviation(husimi(*mode, t, grid), g));
    }
    add("boundary_max", g.boundary_max());
    write_out(cfg, base + ".dat", grid_dump(g));
  }
  write_out(cfg, base + ".txt", side);
  return kOk;
}

int cmd_moments(const RunConfig& cfg) {
  const auto mode = build_mode(cfg);
  std::string text = "omega_t,mean_q,mean_p,sigma11,sigma12,sigma22,v_min,phi_min_deg\n";
  for (double t : cfg.time.times()) {
    const CovarianceSummary s = covariance_summary(*mode, t);
    text += csv_row({t, s.mean_q, s.mean_p, s.sigma11, s.sigma12, s.sigma22, s.v_min,
                     s.phi_min_defined ? rad_to_deg(s.phi_min) : std::nan("")});
  }
  write_out(cfg, "moments.csv", text);
  return kOk;
}

FitBudget budget_of(const RunConfig& cfg) {
  FitBudget b;
  b.max_evaluations = cfg.max_evaluations;
  b.max_restarts = cfg.max_restarts;
  b.threads = cfg.threads;
  return b;
}

int cmd_reconstruct(const RunConfig& cfg) {
  const double t = cfg.single_time();
  const auto mode = build_mode(cfg);
  const OscillatorDM rho = oscillator_dm(mode, t);
  const Complex alpha = cfg.state.alpha_plus(cfg.system);
  PureFitResult fit;
  const bool fitted = cfg.ensemble.empty();
  if (fitted) {
    fit = reconstruct_pure_neighborhood(rho, cfg.p, alpha, cfg.state.r, cfg.state.vartheta,
                                        budget_of(cfg));
  } else {
    fit.best_params = parse_kitten_ensemble(read_file(cfg.ensemble), alpha, cfg.state.r,
                                            cfg.state.vartheta);
    fit.objective = pure_objective(rho, fit.best_params);
    fit.purity = rho.purity();
    fit.ratio = fit.objective / std::sqrt(fit.purity);
    fit.converged = true;
  }
  write_out(cfg, "reconstruct.txt", pure_report(t, von_neumann_entropy(rho), fit, fitted));
  if (!fit.converged) {
    std::cerr << "reconstruct: simplex did not converge within the budget\n";
    return kNumerical;
  }
  return kOk;
}

int cmd_thermal_compare(const RunConfig& cfg) {
  const double t = cfg.single_time();
  const auto mode = build_mode(cfg);
  const OscillatorDM rho = oscillator_dm(mode, t);
  const Complex alpha = cfg.state.alpha_plus(cfg.system);
  const PhaseGrid grid = cfg.grid();
  std::string text;
  bool converged = true;
  if (cfg.ensemble.empty()) {
    const ThermalFitResult fit = fit_thermal_mixture(rho, cfg.count, alpha, cfg.state.r,
                                                     cfg.state.vartheta, grid, grid,
                                                     budget_of(cfg), cfg.fit_nbar);
    converged = fit.converged;
    text = thermal_report(t, fit.best_params, fit.comparison, true, fit.converged,
                          fit.evaluations, fit.restarts_used);
  } else {
    const ThermalKittenMixture mix =
        parse_thermal_mixture(read_file(cfg.ensemble), alpha, cfg.state.r, cfg.state.vartheta);
    text = thermal_report(t, mix, compare_thermal(rho, mix, grid, grid), false, true, 0, 0);
  }
  write_out(cfg, "thermal_compare.txt", text);
  if (!converged) {
    std::cerr << "thermal-compare: simplex did not converge within the budget\n";
    return kNumerical;
  }
  return kOk;
}

int cmd_validate(const RunConfig& cfg) {
  const auto times = cfg.time.times();
  const double t = times.empty() ? 0.0 : times.front();
  const auto checks = identity_suite(cfg.system, cfg.state, cfg.n_max, t, cfg.grid(), cfg.tail_tol);
  bool ok = true;
  for (const auto& c : checks) {
    std::cout << verdict_line(c) << "\n";
    ok = ok && c.passed;
  }
  std::cout << (ok ? "all checks passed" : "some checks failed") << "\n";
  return ok ? kOk : kValidation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kitten: qubit-oscillator kitten-state numerics"};
  app.require_subcommand(1);
  std::string config_path, out_dir;
  std::vector<std::string> overrides;
  int threads = 0;
  app.add_option("--config", config_path, "key = value configuration file");
  app.add_option("--set", overrides, "override key=value (repeatable)")->take_all();
  app.add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--out", out_dir, "output directory");
  const std::pair<const char*, const char*> commands[] = {
      {"evolve", "entropies, negativity and purity over the time list"},
      {"grid", "phase-space or angular distribution at one time"},
      {"moments", "quadrature means and covariance over the time list"},
      {"reconstruct", "fit or evaluate a pure-neighborhood kitten ensemble"},
      {"thermal-compare", "fit or evaluate a thermal squeezed mixture"},
      {"validate", "identity and oracle checks"},
  };
  for (const auto& [name, help] : commands) app.add_subcommand(name, help)->fallthrough();
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParse;
  }
  const std::string command = app.get_subcommands().front()->get_name();
  try {
    RunConfig cfg;
    if (!config_path.empty()) cfg = load_config(config_path);
    for (const auto& o : overrides) apply_override(cfg, o);
    if (threads > 0) cfg.threads = threads;
    if (!out_dir.empty()) cfg.out = out_dir;
    validate_config(cfg);
    set_default_threads(cfg.threads);
    if (command == "evolve") return cmd_evolve(cfg);
    if (command == "grid") return cmd_grid(cfg);
    if (command == "moments") return cmd_moments(cfg);
    if (command == "reconstruct") return cmd_reconstruct(cfg);
    if (command == "thermal-compare") return cmd_thermal_compare(cfg);
    return cmd_validate(cfg);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kIo;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumerical;
  }
}
