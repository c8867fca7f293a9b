#pragma once

// Reconstruction of oscillator states by reference kitten ensembles (pure
// neighborhood) and by moment-matched thermal squeezed mixtures.

#include <functional>

#include "kitten/density.hpp"
#include "kitten/moments.hpp"
#include "kitten/phase_space.hpp"
#include "kitten/reference.hpp"
#include "kitten/simplex.hpp"

namespace kitten {

struct FitBudget {
  int max_evaluations = 4000;  // per restart
  int max_restarts = 12;
  double spread_tol = 1e-6;
  int threads = 0;  // restarts run concurrently; 0 selects default_threads()
};

/// Rotation theta (radians) for which candidate(phi - theta) best matches
/// target(phi).  Both profiles are sampled at phi_j = 2 pi j / M with the same M.
/// The correlation is resolved on a 0.05 degree grid and refined by a parabola
/// through the peak; the result is reduced to [0, period).  Throws
/// AlignmentError when either profile is flat.
double align_theta(const RVector& target, const RVector& candidate, double period = 2.0 * kPi);

/// Same, with the candidate supplied as a sampler of M points.
double align_theta(const RVector& target, const std::function<RVector(int)>& candidate_fn,
                   double period = 2.0 * kPi);

/// d_HS(rho, rho_ref) through Fock-space traces, reference built on rho's truncation.
double pure_objective(const OscillatorDM& rho, const KittenEnsemble& ens);

struct PureFitResult {
  KittenEnsemble best_params;
  double objective = 0.0;  // d_HS
  double purity = 0.0;     // Tr rho^2
  double ratio = 0.0;      // d_HS / sqrt(Tr rho^2)
  double theta_seed = 0.0;
  int evaluations = 0;
  int restarts_used = 0;
  bool converged = false;
};

/// Fits tau, f_k, g_k and theta_tilde of a p-kitten ensemble built on
/// (base_alpha, r, vartheta) to rho.  f_0 is fixed to 1; for p = 1 tau is
/// reported as 1.
PureFitResult reconstruct_pure_neighborhood(const OscillatorDM& rho, int p, Complex base_alpha,
                                            double r, double vartheta,
                                            const FitBudget& budget = {});

/// Moment and distance comparison of rho against a thermal mixture.
struct ThermalComparison {
  CovarianceSummary rho_moments;
  CovarianceSummary mixture_moments;
  double residual = 0.0;  // scaled moment mismatch
  double d_hs = 0.0;      // Wigner-grid path
  double d_hs_fock = 0.0; // Fock-trace path
  double purity = 0.0;
  double ratio = 0.0;     // d_hs / sqrt(Tr rho^2)
  double kl = 0.0;        // S(Q_rho || Q_mixed)
};

/// sum ((m_rho - m_mix) / s)^2 over (<q>, <p>) with s = 1e-2 and
/// (sigma11, sigma12, sigma22) with s = 5e-2.
double moment_residual(const CovarianceSummary& a, const CovarianceSummary& b);

/// Evaluates every quantity of a thermal comparison.  Wigner functions are
/// sampled on wigner_grid, Husimi functions on husimi_grid.
ThermalComparison compare_thermal(const OscillatorDM& rho, const ThermalKittenMixture& mix,
                                  const PhaseGrid& wigner_grid, const PhaseGrid& husimi_grid);

struct ThermalFitResult {
  ThermalKittenMixture best_params;
  double objective = 0.0;  // moment residual
  ThermalComparison comparison;
  int evaluations = 0;
  int restarts_used = 0;
  bool converged = false;
};

/// Aligns theta_tilde on the angular distribution, then fits g_k (and nbar when
/// fit_nbar) to the moments of rho.
ThermalFitResult fit_thermal_mixture(const OscillatorDM& rho, int count, Complex base_alpha,
                                     double r, double vartheta, const PhaseGrid& wigner_grid,
                                     const PhaseGrid& husimi_grid, const FitBudget& budget = {},
                                     bool fit_nbar = true);

}  // namespace kitten
