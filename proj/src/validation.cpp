#include "kitten/validation.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <memory>

#include "kitten/config.hpp"
#include "kitten/density.hpp"
#include "kitten/errors.hpp"
#include "kitten/reference.hpp"

namespace kitten {

namespace {

double max_abs_diff(const PhaseGrid& a, const PhaseGrid& b) {
  return (a.values - b.values).cwiseAbs().maxCoeff();
}

}  // namespace

std::vector<CheckResult> identity_suite(const SystemParams& params, const InitialState& init,
                                        int n_max, double t, const PhaseGrid& grid,
                                        double tail_tol, double oracle_time) {
  std::vector<CheckResult> out;
  std::shared_ptr<const ModeData> mode;
  auto run = [&](const std::string& name, double tol, const std::function<double()>& measure) {
    CheckResult c;
    c.name = name;
    c.tolerance = tol;
    try {
      c.value = measure();
      c.passed = std::isfinite(c.value) && c.value <= tol;
    } catch (const std::exception& e) {
      c.passed = false;
      c.value = std::numeric_limits<double>::quiet_NaN();
      c.detail = e.what();
    }
    out.push_back(c);
  };
  auto need_mode = [&]() -> const ModeData& {
    if (!mode) throw Error("mode data unavailable");
    return *mode;
  };

  run("truncation", tail_tol, [&] {
    mode = std::make_shared<const ModeData>(ModeData::build(params, init, n_max, tail_tol));
    mode->check_truncation();
    return std::max(0.0, mode->tail);
  });
  run("trace", 1e-10, [&] {
    const auto [plus, minus] = branch_states(need_mode(), t);
    return std::abs((plus.squaredNorm() + minus.squaredNorm()) / init.branch_norm() - 1.0);
  });
  run("entropy_equality", 1e-6, [&] {
    return std::abs(von_neumann_entropy(oscillator_dm(need_mode(), t)) -
                    von_neumann_entropy(qubit_dm(need_mode(), t)));
  });
  PhaseGrid w, q;
  run("wigner_integral", 1e-3, [&] {
    w = wigner(need_mode(), t, grid);
    return std::abs(w.integral() - 1.0);
  });
  run("husimi_integral", 1e-3, [&] {
    q = husimi(need_mode(), t, grid);
    return std::abs(q.integral() - 1.0);
  });
  run("husimi_convolution", 1e-3, [&] {
    if (w.values.size() == 0 || q.values.size() == 0) throw Error("grids unavailable");
    return max_abs_diff(q, gaussian_convolve(w, 0.5));
  });
  run("wigner_t0", 1e-8, [&] {
    // W is bilinear in the amplitudes, so it needs a much smaller tail than the probabilities
    int deep = need_mode().n_max + 40;
    try {
      deep = std::max(need_mode().n_max, default_truncation(init.alpha_plus(params), init.r,
                                                            init.vartheta, 1e-24));
    } catch (const TruncationError&) {
    }
    const ModeData md = ModeData::build(params, init, deep, tail_tol);
    return max_abs_diff(wigner(md, 0.0, grid), wigner_t0_closed_form(init, grid));
  });
  run("angular_integral", 1e-6, [&] {
    const int samples = 3600;
    const RVector prof = angular_distribution(need_mode(), t, samples);
    return std::abs(prof.sum() * 2.0 * kPi / samples - 1.0);
  });
  run("charlier_orthonormality", 1e-10, [&] {
    const double x = params.x();
    const int top = 20, span = 160;
    double worst = 0.0;
    for (int m = 0; m <= top; ++m) {
      for (int n = 0; n <= top; ++n) {
        double sum = 0.0;
        for (int k = 0; k < span; ++k) sum += displaced_overlap(m, k, x) * displaced_overlap(n, k, x);
        worst = std::max(worst, std::abs(sum - (m == n ? 1.0 : 0.0)));
      }
    }
    return worst;
  });
  run("cd_norm", 1e-12, [&] {
    const ModeData& md = need_mode();
    double worst = 0.0;
    for (int n = 0; n < md.n_max; ++n) {
      const auto [c, d] = cd_coefficients(md, n, t);
      worst = std::max(worst, std::abs(std::norm(c) + std::norm(d) - init.branch_norm()));
    }
    return worst;
  });
  run("hs_fock_vs_wigner", 1e-2, [&] {
    const OscillatorDM a = oscillator_dm(need_mode(), t);
    const OscillatorDM b = oscillator_dm(need_mode(), 0.0);
    return std::abs(hs_distance(a, b) -
                    hs_distance_wigner(wigner_from_dm(a.rho, grid), wigner_from_dm(b.rho, grid)));
  });
  run("gaussian_negativity", 1e-3, [&] {
    const KittenEnsemble g =
        KittenEnsemble::uniform(1, init.alpha_plus(params), init.r, init.vartheta);
    return negativity(reference_wigner(g, grid));
  });
  run("coherent_wehrl", 1e-3, [&] {
    ThermalKittenMixture coherent =
        ThermalKittenMixture::uniform(1, init.alpha_plus(params), 0.0, 0.0);
    return std::abs(wehrl_entropy(thermal_husimi(coherent, grid)) - (1.0 + std::log(kPi)));
  });
  run("exact_oracle", 0.05, [&] {
    const ModeData& md = need_mode();
    const ExactState exact = exact_evolve_oracle(params, init, oracle_time, md.n_max);
    return hs_distance(exact.oscillator, oscillator_dm(md, oracle_time));
  });
  return out;
}

std::string verdict_line(const CheckResult& c) {
  std::string s = std::string(c.passed ? "PASS " : "FAIL ") + c.name + " " +
                  format_number(c.value) + " " + format_number(c.tolerance);
  if (!c.detail.empty()) s += " " + c.detail;
  return s;
}

}  // namespace kitten
