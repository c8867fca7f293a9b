#include "kitten/report.hpp"

#include <cmath>
#include <map>
#include <sstream>

#include "kitten/config.hpp"
#include "kitten/errors.hpp"

namespace kitten {

std::string grid_dump(const PhaseGrid& grid) {
  std::string out = "# " + format_number(grid.center.real()) + " " +
                    format_number(grid.center.imag()) + " " + format_number(grid.half_extent) +
                    " " + std::to_string(grid.points) + "\n";
  for (int row = 0; row < grid.points; ++row) {
    for (int col = 0; col < grid.points; ++col) {
      if (col) out += ' ';
      out += format_number(grid.values(row, col));
    }
    out += '\n';
  }
  return out;
}

PhaseGrid parse_grid_dump(const std::string& text) {
  std::stringstream in(text);
  std::string hash;
  double cr = 0.0, ci = 0.0, h = 0.0;
  int n = 0;
  if (!(in >> hash >> cr >> ci >> h >> n) || hash != "#") throw ParseError("bad grid header", 1);
  PhaseGrid g = PhaseGrid::make(Complex(cr, ci), h, n);
  for (int row = 0; row < n; ++row) {
    for (int col = 0; col < n; ++col) {
      if (!(in >> g.values(row, col))) throw ParseError("truncated grid dump", row + 2);
    }
  }
  return g;
}

namespace {

struct Entries {
  std::map<std::string, KeyValue> kv;

  explicit Entries(const std::string& text) {
    for (const auto& e : parse_key_values(text)) kv[e.key] = e;
  }
  bool has(const std::string& k) const { return kv.count(k) > 0; }
  int line(const std::string& k) const { return has(k) ? kv.at(k).line : 0; }
  double number(const std::string& k, double fallback) const {
    return has(k) ? parse_number(kv.at(k).value, kv.at(k).line) : fallback;
  }
  std::vector<double> list(const std::string& k, std::size_t n, double fallback) const {
    if (!has(k)) return std::vector<double>(n, fallback);
    auto v = parse_number_list(kv.at(k).value, kv.at(k).line);
    if (v.size() != n) {
      throw ParseError(k + " needs " + std::to_string(n) + " entries", kv.at(k).line);
    }
    return v;
  }
  void only(std::initializer_list<const char*> allowed) const {
    for (const auto& [k, e] : kv) {
      bool ok = false;
      for (const char* a : allowed) ok = ok || k == a;
      if (!ok) throw ParseError("unknown key '" + k + "'", e.line);
    }
  }
};

int as_count(double v, int line) {
  if (v != std::floor(v) || v < 1 || v > 1e6) throw ParseError("count must be a positive integer", line);
  return static_cast<int>(v);
}

std::string join(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += format_number(v[i]);
  }
  return out;
}

std::string line(const std::string& k, const std::string& v) { return k + " = " + v + "\n"; }
std::string line(const std::string& k, double v) { return line(k, format_number(v)); }

}  // namespace

KittenEnsemble parse_kitten_ensemble(const std::string& text, Complex base_alpha, double r,
                                     double vartheta) {
  const Entries e(text);
  e.only({"p", "tau", "theta_tilde_deg", "f_k_mod", "f_k_arg_pi", "g_k"});
  if (!e.has("p")) throw ParseError("ensemble file needs key 'p'");
  const int p = as_count(e.number("p", 1), e.line("p"));
  KittenEnsemble ens = KittenEnsemble::uniform(p, base_alpha, r, vartheta);
  ens.tau = e.number("tau", 1.0);
  ens.theta_tilde = deg_to_rad(e.number("theta_tilde_deg", 0.0));
  const auto mod = e.list("f_k_mod", p, 1.0);
  const auto arg = e.list("f_k_arg_pi", p, 0.0);
  const auto g = e.list("g_k", p, 1.0);
  for (int k = 0; k < p; ++k) {
    ens.f[k] = std::polar(mod[k], kPi * arg[k]);
    ens.g[k] = g[k];
  }
  try {
    ens.validate();
  } catch (const DomainError& err) {
    throw ParseError(err.what());
  }
  return ens;
}

ThermalKittenMixture parse_thermal_mixture(const std::string& text, Complex base_alpha, double r,
                                           double vartheta) {
  const Entries e(text);
  e.only({"count", "theta_tilde_deg", "g_k", "nbar"});
  int count = 0;
  if (e.has("count")) {
    count = as_count(e.number("count", 2), e.line("count"));
  } else if (e.has("g_k")) {
    count = static_cast<int>(parse_number_list(e.kv.at("g_k").value, e.line("g_k")).size());
  } else {
    throw ParseError("mixture file needs 'count' or 'g_k'");
  }
  ThermalKittenMixture mix = ThermalKittenMixture::uniform(count, base_alpha, r, vartheta);
  mix.theta_tilde = deg_to_rad(e.number("theta_tilde_deg", 0.0));
  mix.g = e.list("g_k", count, 1.0);
  mix.nbar = e.number("nbar", 0.0);
  try {
    mix.validate();
  } catch (const DomainError& err) {
    throw ParseError(err.what());
  }
  return mix;
}

std::string ensemble_lines(const KittenEnsemble& ens) {
  std::vector<double> mod, arg;
  for (const Complex& f : ens.f) {
    mod.push_back(std::abs(f));
    double a = std::arg(f) / kPi;
    if (a < 0.0) a += 2.0;
    arg.push_back(a);
  }
  return line("p", std::to_string(ens.p)) + line("tau", ens.tau) +
         line("theta_tilde_deg", rad_to_deg(ens.theta_tilde)) + line("f_k_mod", join(mod)) +
         line("f_k_arg_pi", join(arg)) + line("g_k", join(ens.g));
}

std::string mixture_lines(const ThermalKittenMixture& mix) {
  return line("count", std::to_string(mix.count)) +
         line("theta_tilde_deg", rad_to_deg(mix.theta_tilde)) + line("g_k", join(mix.g)) +
         line("nbar", mix.nbar);
}

std::string pure_report(double omega_t, double entropy, const PureFitResult& fit, bool fitted) {
  std::string out = line("omega_t", omega_t) + line("mode", fitted ? "fit" : "fixed") +
                    line("S", entropy) + ensemble_lines(fit.best_params) +
                    line("d_hs", fit.objective) + line("purity", fit.purity) +
                    line("ratio", fit.ratio);
  if (fitted) {
    out += line("theta_seed_deg", rad_to_deg(fit.theta_seed)) +
           line("evaluations", std::to_string(fit.evaluations)) +
           line("restarts_used", std::to_string(fit.restarts_used));
  }
  out += line("converged", fit.converged ? "true" : "false");
  return out;
}

std::string thermal_report(double omega_t, const ThermalKittenMixture& mix,
                           const ThermalComparison& cmp, bool fitted, bool converged,
                           int evaluations, int restarts_used) {
  const auto& a = cmp.rho_moments;
  const auto& b = cmp.mixture_moments;
  std::string out = line("omega_t", omega_t) + line("mode", fitted ? "fit" : "fixed") +
                    line("mean_q", a.mean_q) + line("mean_p", a.mean_p) +
                    line("sigma11", a.sigma11) + line("sigma12", a.sigma12) +
                    line("sigma22", a.sigma22) + mixture_lines(mix) +
                    line("mixed_mean_q", b.mean_q) + line("mixed_mean_p", b.mean_p) +
                    line("mixed_sigma11", b.sigma11) + line("mixed_sigma12", b.sigma12) +
                    line("mixed_sigma22", b.sigma22) + line("moment_residual", cmp.residual) +
                    line("kl", cmp.kl) + line("d_hs", cmp.d_hs) +
                    line("d_hs_fock", cmp.d_hs_fock) + line("purity", cmp.purity) +
                    line("ratio", cmp.ratio);
  if (fitted) {
    out += line("evaluations", std::to_string(evaluations)) +
           line("restarts_used", std::to_string(restarts_used));
  }
  out += line("converged", converged ? "true" : "false");
  return out;
}

}  // namespace kitten
