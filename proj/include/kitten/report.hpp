#pragma once

// Text formats: grid dumps, ensemble files and key = value fit reports.

#include <string>

#include "kitten/fit.hpp"
#include "kitten/phase_space.hpp"
#include "kitten/reference.hpp"

namespace kitten {

/// "# center_re center_im half_extent n", then one grid row per line.
std::string grid_dump(const PhaseGrid& grid);
PhaseGrid parse_grid_dump(const std::string& text);

/// Keys p, tau, theta_tilde_deg, f_k_mod, f_k_arg_pi (f_k = mod e^{i pi arg}), g_k.
/// Missing f_k and g_k default to ones, missing tau to 1.
KittenEnsemble parse_kitten_ensemble(const std::string& text, Complex base_alpha, double r,
                                     double vartheta);
/// Keys count, theta_tilde_deg, g_k, nbar.  count defaults to the length of g_k.
ThermalKittenMixture parse_thermal_mixture(const std::string& text, Complex base_alpha, double r,
                                           double vartheta);

std::string ensemble_lines(const KittenEnsemble& ens);
std::string mixture_lines(const ThermalKittenMixture& mix);

/// Pure-neighborhood fit report.
std::string pure_report(double omega_t, double entropy, const PureFitResult& fit, bool fitted);
/// Thermal-mixture comparison report.
std::string thermal_report(double omega_t, const ThermalKittenMixture& mix,
                           const ThermalComparison& cmp, bool fitted, bool converged,
                           int evaluations, int restarts_used);

}  // namespace kitten
