#pragma once

// System parameters, the hybrid squeezed initial state and the per-mode data of
// the adiabatic solution.  Energies are stored in units of omega and time is the
// dimensionless omega*t throughout.

#include <cmath>
#include <utility>

#include "kitten/types.hpp"

namespace kitten {

struct SystemParams {
  double delta = 0.0;    // qubit splitting
  double epsilon = 0.0;  // static bias
  double omega = 1.0;
  double lambda = 0.0;   // coupling

  /// Throws DomainError on omega <= 0, delta < 0 or lambda < 0.
  void validate() const;

  double shift() const { return lambda / omega; }
  double x() const { return 4.0 * shift() * shift(); }
  double delta_tilde() const { return delta / omega * std::exp(-0.5 * x()); }
  double eps_tilde() const { return 0.5 * epsilon / omega; }

  /// True when the renormalized splitting is no longer small against omega.
  bool outside_adiabatic_regime() const { return delta_tilde() > 0.25; }
};

struct InitialState {
  Complex alpha{0.0, 0.0};
  double r = 0.0;
  double vartheta = 0.0;
  Complex c{0.0, 0.0};

  void validate() const;

  double mu() const { return std::cosh(r); }
  Complex nu() const { return std::polar(std::sinh(r), vartheta); }
  Complex alpha_plus(const SystemParams& p) const { return alpha + p.shift(); }
  double branch_norm() const { return 1.0 + std::norm(c); }
};

/// Fock amplitudes <n| D(alpha) S(xi) |0> for n < count, xi = r e^{i vartheta}.
CVector squeezed_amplitudes(int count, Complex alpha, double r, double vartheta);

/// Single amplitude S_n(alpha, xi).
Complex squeezed_amplitude(int n, Complex alpha, double r, double vartheta);

/// Smallest N <= 256 whose squeezed-amplitude tail sum is below tail_tol.
/// Throws TruncationError if no such N exists.
int default_truncation(Complex alpha, double r, double vartheta, double tail_tol = 1e-12);

/// Overlap <m_-|n_+> of the displaced number states, |n_+-> = D(-+sqrt(x)/2)|n>.
double displaced_overlap(int m, int n, double x);

/// Per-mode quantities of the adiabatic solution.  Immutable after build().
struct ModeData {
  SystemParams params;
  InitialState init;
  int n_max = 0;
  double tail_tol = 1e-12;
  double tail = 0.0;  // 1 - sum |s_amp|^2
  CVector s_amp;
  RVector laguerre;
  RVector delta_n;
  RVector chi_n;

  /// n_max = 0 selects default_truncation.
  static ModeData build(const SystemParams& params, const InitialState& init, int n_max = 0,
                        double tail_tol = 1e-12);

  /// Throws TruncationError when the squeezed-amplitude tail exceeds tail_tol.
  void check_truncation() const;
};

/// (C_n(t), D_n(t)) for the coefficient c.
std::pair<Complex, Complex> cd_coefficients(const ModeData& mode, int n, double t, Complex c);
inline std::pair<Complex, Complex> cd_coefficients(const ModeData& mode, int n, double t) {
  return cd_coefficients(mode, n, t, mode.init.c);
}

/// Coefficients of the two oscillator branches in their displaced bases:
/// up[n] = S_n C_n e^{-int}, down[n] = (-1)^n S_n D_n e^{-int}.
struct ModeVectors {
  CVector up;
  CVector down;
};

ModeVectors mode_vectors(const ModeData& mode, double t);

}  // namespace kitten
