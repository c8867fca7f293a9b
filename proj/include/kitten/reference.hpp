#pragma once

// Reference kitten ensembles (pure superposition plus incoherent mixture of p
// rotated squeezed coherent states) and thermal squeezed mixtures, with their
// phase-space distributions and moments.

#include <vector>

#include "kitten/density.hpp"
#include "kitten/moments.hpp"
#include "kitten/phase_space.hpp"
#include "kitten/types.hpp"

namespace kitten {

/// Rotated copies of a squeezed coherent state: alpha_k = alpha e^{i a_k},
/// xi_k = xi e^{2 i a_k}, a_k = theta_tilde + 2 pi k / count.
struct SqueezedRing {
  Complex base_alpha{0.0, 0.0};
  double r = 0.0;
  double vartheta = 0.0;
  double theta_tilde = 0.0;
  int count = 1;

  double angle(int k) const { return theta_tilde + 2.0 * kPi * k / count; }
  Complex alpha(int k) const { return base_alpha * std::polar(1.0, angle(k)); }
  double xi_phase(int k) const { return vartheta + 2.0 * angle(k); }
  double mu() const { return std::cosh(r); }
  Complex nu(int k) const { return std::polar(std::sinh(r), xi_phase(k)); }

  /// N x count matrix of Fock amplitudes; throws TruncationError when any
  /// column misses more than 1e-10 of its norm.
  CMatrix fock_vectors(int n_max) const;
};

/// rho = tau |psi><psi| + (1 - tau) sum_k g_k |k><k| / sum g,
/// |psi> proportional to sum_k f_k |alpha_k, xi_k>.
struct KittenEnsemble {
  int p = 1;
  std::vector<Complex> f{1.0};
  std::vector<double> g{1.0};
  double tau = 1.0;
  double theta_tilde = 0.0;
  Complex base_alpha{0.0, 0.0};
  double r = 0.0;
  double vartheta = 0.0;

  /// Uniform ensemble: f_k = 1, g_k = 1, tau = 1.
  static KittenEnsemble uniform(int p, Complex base_alpha, double r, double vartheta,
                                double theta_tilde = 0.0);

  SqueezedRing ring() const { return {base_alpha, r, vartheta, theta_tilde, p}; }
  /// Throws DomainError on inconsistent sizes, tau outside [0, 1], negative g,
  /// or a vanishing normalization.
  void validate() const;
};

/// <alpha_l, xi_l | alpha_k, xi_k> for two members of the ring.
Complex squeezed_inner_product(const SqueezedRing& ring, int k, int l);
inline Complex squeezed_inner_product(int k, int l, const KittenEnsemble& ens) {
  return squeezed_inner_product(ens.ring(), k, l);
}

/// Gram matrix G(l, k) = <alpha_l, xi_l | alpha_k, xi_k>.
CMatrix gram(const SqueezedRing& ring);

/// N_pure = f^dag G f.
double pure_norm(const KittenEnsemble& ens);

/// Wigner function of |alpha_k, xi_k><alpha_l, xi_l| at beta.
Complex cross_wigner(const SqueezedRing& ring, int k, int l, Complex beta);

PhaseGrid reference_wigner(const KittenEnsemble& ens, const PhaseGrid& grid);
OscillatorDM reference_fock_dm(const KittenEnsemble& ens, int n_max);

/// sum_k g_k D(alpha_k) S(xi_k) rho_th S^dag D^dag / sum g with thermal occupation nbar.
struct ThermalKittenMixture {
  int count = 2;
  std::vector<double> g{1.0, 1.0};
  double theta_tilde = 0.0;
  double nbar = 0.0;
  Complex base_alpha{0.0, 0.0};
  double r = 0.0;
  double vartheta = 0.0;

  static ThermalKittenMixture uniform(int count, Complex base_alpha, double r, double vartheta,
                                      double theta_tilde = 0.0);
  /// nbar = 1 / (exp(beta_b omega) - 1).
  static double nbar_from_beta(double beta_b, double omega = 1.0);

  SqueezedRing ring() const { return {base_alpha, r, vartheta, theta_tilde, count}; }
  /// sqrt(nbar^2 + mu^2 (2 nbar + 1)).
  double big_n() const;
  void validate() const;
};

PhaseGrid thermal_wigner(const ThermalKittenMixture& mix, const PhaseGrid& grid);
PhaseGrid thermal_husimi(const ThermalKittenMixture& mix, const PhaseGrid& grid);
CovarianceSummary thermal_moments(const ThermalKittenMixture& mix);
OscillatorDM thermal_fock_dm(const ThermalKittenMixture& mix, int n_max);

/// integral q1 ln(q1 / q2); cells with q1 < 1e-300 contribute nothing.  Throws
/// DomainError where q2 vanishes under q1.
double kl_divergence_q(const PhaseGrid& q1, const PhaseGrid& q2);

}  // namespace kitten
