#pragma once

// Quasiprobability distributions on a uniform phase-space grid, angular
// densities and the grid functionals built on them (normalization, Wehrl
// entropy, negativity, Gaussian smoothing, Hilbert-Schmidt distance).

#include <vector>

#include "kitten/density.hpp"
#include "kitten/model.hpp"
#include "kitten/types.hpp"

namespace kitten {

/// Uniform square grid of complex points.  values(row, col) sits at
/// center + x_col + i y_row, x_col = -h + col * spacing, likewise y_row.
struct PhaseGrid {
  Complex center{0.0, 0.0};
  double half_extent = 1.0;
  int points = 3;
  RMatrix values;

  /// Zero-filled grid; points must be odd and >= 3.
  static PhaseGrid make(Complex center, double half_extent, int points);

  double spacing() const { return 2.0 * half_extent / (points - 1); }
  double cell_area() const { return spacing() * spacing(); }
  Complex point(int row, int col) const {
    return center + Complex(-half_extent + col * spacing(), -half_extent + row * spacing());
  }
  bool same_layout(const PhaseGrid& other) const;

  /// Riemann sum of values times the cell area, accumulated row-major.
  double integral() const;
  double boundary_max() const;
  /// Throws GridExtentError when boundary_max() exceeds tol.
  void check_boundary(double tol = 1e-8) const;
};

/// Center 0, half extent |alpha_+| e^r + 3, 301 points per axis.
PhaseGrid default_grid(const SystemParams& params, const InitialState& init);

/// Evaluates sum_{n,m} rho_{nm} G_{n,m}(z) for a fixed N x N matrix; W of rho at beta
/// is (2/pi) times the value at z = 2 beta.
class WignerKernel {
 public:
  explicit WignerKernel(const CMatrix& rho);
  Complex operator()(Complex z) const;

 private:
  int n_;
  // per diagonal d: (-1)^k rho(k, k+d) and (-1)^k rho(k+d, k), k < n - d
  std::vector<CVector> upper_;
  std::vector<CVector> lower_;
  std::vector<RVector> coupling_;  // sqrt(k (k + d))
  std::vector<RVector> scale_;     // 1 / sqrt((k + 1)(k + 1 + d))
  RVector half_log_factorial_;
};

/// Wigner function of the adiabatic oscillator state at time t.  Throws
/// CrossCheckError if the imaginary residue exceeds 1e-10 and GridExtentError
/// if the boundary values exceed 1e-8.
PhaseGrid wigner(const ModeData& mode, double t, const PhaseGrid& grid);
PhaseGrid wigner_from_dm(const CMatrix& rho, const PhaseGrid& grid, bool check_boundary = true);

/// Two-Gaussian closed form of W at t = 0.
PhaseGrid wigner_t0_closed_form(const InitialState& init, const PhaseGrid& grid);

/// Pointwise Husimi function of the adiabatic state at a fixed time.
class HusimiEvaluator {
 public:
  HusimiEvaluator(const ModeData& mode, double t);
  double operator()(Complex beta) const;

 private:
  CVector up_;    // a_n / sqrt(n!)
  CVector down_;  // b_n / sqrt(n!)
  double shift_;
  double norm_;
};

PhaseGrid husimi(const ModeData& mode, double t, const PhaseGrid& grid);
/// Q(beta) = <beta|rho|beta> / pi.
PhaseGrid husimi_from_dm(const CMatrix& rho, const PhaseGrid& grid, bool check_boundary = true);

/// Coefficients of the linearized-Laguerre closed form of Q.
struct LinearApproxParams {
  double varepsilon = 0.0;
  double omega_plus = 1.0;
  double omega_minus = 1.0;
  Complex alpha_hat{0.0, 0.0};

  /// Throws DomainError when eps_tilde = 0.
  static LinearApproxParams from(const SystemParams& params, const InitialState& init);
};

PhaseGrid husimi_linear(const ModeData& mode, const LinearApproxParams& lin, double t,
                        const PhaseGrid& grid);

/// Integral of |q_full - q_lin|.
double q_deviation(const PhaseGrid& q_full, const PhaseGrid& q_lin);

/// Angular Husimi density Q(theta) at theta_j = 2 pi j / samples from the
/// closed-form radial kernels.
RVector angular_husimi(const ModeData& mode, double t, int samples);

/// Same density by direct radial quadrature of Q along each ray.
RVector angular_husimi_radial(const ModeData& mode, double t, int samples, double r_max,
                              int radial_points = 2001);

/// Angular distribution P(theta) = <theta|rho|theta> / 2 pi at theta_j = 2 pi j / samples.
/// k_max = 0 selects N + 24.  Throws TruncationError when the discarded tail of
/// the displaced branches exceeds 1e-10.
RVector angular_distribution(const ModeData& mode, double t, int samples, int k_max = 0);
RVector angular_distribution_from_dm(const CMatrix& rho, int samples);

/// Local maxima of a periodic profile that reach rel_threshold * max.
std::vector<int> circular_peaks(const RVector& profile, double rel_threshold = 0.1);

/// -integral Q ln Q.
double wehrl_entropy(const PhaseGrid& q);

/// integral |W| - 1, clamped at 0.
double negativity(const PhaseGrid& w);

/// Convolution with (1 / (pi v)) exp(-|d|^2 / v); v = 1/2 maps W to Q.
PhaseGrid gaussian_convolve(const PhaseGrid& src, double variance);

/// sqrt(pi integral (W1 - W2)^2).
double hs_distance_wigner(const PhaseGrid& w1, const PhaseGrid& w2);

}  // namespace kitten
