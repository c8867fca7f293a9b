#pragma once

// First and second quadrature moments of the oscillator state, the covariance
// matrix and the squeezing direction.

#include <utility>

#include "kitten/model.hpp"
#include "kitten/phase_space.hpp"
#include "kitten/types.hpp"

namespace kitten {

struct CovarianceSummary {
  double mean_q = 0.0;
  double mean_p = 0.0;
  double sigma11 = 0.5;
  double sigma12 = 0.0;
  double sigma22 = 0.5;
  double v_min = 0.5;
  double phi_min = 0.0;  // radians in [0, pi)
  bool phi_min_defined = false;

  /// Variance of X_phi = q cos(phi) + p sin(phi).
  double variance(double phi) const;
  /// <(Delta a)^2> = (sigma11 - sigma22)/2 + i sigma12.
  Complex delta_a_squared() const { return Complex(0.5 * (sigma11 - sigma22), sigma12); }
};

/// Completes v_min and phi_min from the means and covariance entries.  The two
/// stationary angles are compared and the smaller variance is kept; phi_min is
/// flagged undefined when |<(Delta a)^2>| < 1e-12.
CovarianceSummary summarize(double mean_q, double mean_p, double s11, double s12, double s22);

/// (<X_phi>, <X_phi^2>) of the adiabatic state from the closed-form mode sums.
std::pair<double, double> quadrature_moments(const ModeData& mode, double t, double phi);

CovarianceSummary covariance_summary(const ModeData& mode, double t);

/// Moments of an arbitrary density matrix by Fock-space traces.
CovarianceSummary covariance_from_dm(const CMatrix& rho);

/// (<X_phi>, <X_phi^2>) from a Husimi grid, with the vacuum correction on the
/// second moment.
std::pair<double, double> grid_quadrature_moments(const PhaseGrid& q, double phi);

}  // namespace kitten
