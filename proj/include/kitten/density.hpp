#pragma once

// Reduced density matrices of the adiabatic solution, entropies, trace
// functionals and the Hilbert-Schmidt distance.  exact_evolve_oracle propagates
// the full qubit-oscillator Hamiltonian in a truncated basis and serves as the
// reference for the adiabatic closed forms.

#include <memory>
#include <utility>

#include <Eigen/Core>

#include "kitten/model.hpp"

namespace kitten {

/// Oscillator density matrix in the bare Fock basis.
struct OscillatorDM {
  CMatrix rho;
  double time = 0.0;
  /// Mode data the matrix was built from, if any; enables the mode-sum
  /// cross-check in trace_product.
  std::shared_ptr<const ModeData> source;

  int n_max() const { return static_cast<int>(rho.rows()); }
  double trace() const { return rho.trace().real(); }
  double purity() const;
};

/// Qubit density matrix [[rho11, zeta], [zeta^*, rho_m1m1]] in the sigma_z basis.
struct QubitDM {
  double rho11 = 1.0;
  double rho_m1m1 = 0.0;
  Complex zeta{0.0, 0.0};
  double time = 0.0;

  double determinant() const { return rho11 * rho_m1m1 - std::norm(zeta); }
  /// p = sqrt(1/4 - det); eigenvalues are 1/2 +- p.
  double polarization() const;
  std::pair<double, double> eigenvalues() const;
  Eigen::Matrix2cd matrix() const;
};

/// Oscillator reduced density matrix at time t (N x N, N = mode.n_max).
OscillatorDM oscillator_dm(std::shared_ptr<const ModeData> mode, double t);
OscillatorDM oscillator_dm(const ModeData& mode, double t);

/// Pure oscillator state |psi><psi| / <psi|psi>.
OscillatorDM pure_dm(const CVector& psi, double t = 0.0);

QubitDM qubit_dm(const ModeData& mode, double t);

/// Displaced branch vectors in the bare Fock basis, truncated to N:
/// psi_plus = D(-lambda) up, psi_minus = D(lambda) down.  Throws
/// TruncationError when the discarded weight exceeds 1e-10.
std::pair<CVector, CVector> branch_states(const ModeData& mode, double t);

/// Natural-log von Neumann entropy.  Eigenvalues in (-1e-10, 0) are clipped;
/// anything below -1e-8 raises NumericalValidityError.
double von_neumann_entropy(const OscillatorDM& dm);
double von_neumann_entropy(const QubitDM& dm);
double von_neumann_entropy(const RVector& eigenvalues);

/// Tr(rho1 rho2) as a matrix trace.  When both matrices come from the same
/// mode data the closed-form mode sum is evaluated as well and the two must
/// agree to 1e-8 (CrossCheckError otherwise).
double trace_product(const OscillatorDM& rho1, const OscillatorDM& rho2);

/// Closed-form Tr(rho(t1) rho(t2)) from the mode coefficients and the
/// displaced-state overlaps.
double trace_product_mode_sum(const ModeData& mode, double t1, double t2);

/// zeta(t1, t2) = <psi_-(t2)|psi_+(t1)> / (1 + |c|^2).
Complex zeta_two_time(const ModeData& mode, double t1, double t2);

/// sqrt(Tr rho1^2 + Tr rho2^2 - 2 Tr rho1 rho2), clamped at 0.
double hs_distance(const OscillatorDM& rho1, const OscillatorDM& rho2);

struct ExactState {
  OscillatorDM oscillator;
  QubitDM qubit;
};

/// Full 2N x 2N Hamiltonian -Delta/2 sx - eps/2 sz + a^dag a + lambda sz (a + a^dag)
/// (units of omega), diagonalized once; evolve() propagates the initial state.
class ExactEvolver {
 public:
  ExactEvolver(const SystemParams& params, const InitialState& init, int n_max);

  ExactState evolve(double t) const;
  int n_max() const { return n_max_; }

 private:
  int n_max_;
  RVector energies_;
  CMatrix vectors_;
  CVector initial_coeffs_;  // initial state in the eigenbasis
};

ExactState exact_evolve_oracle(const SystemParams& params, const InitialState& init, double t,
                               int n_max);

}  // namespace kitten
