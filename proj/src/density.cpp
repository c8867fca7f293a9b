#include "kitten/density.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "kitten/errors.hpp"
#include "kitten/specfun.hpp"

namespace kitten {

namespace {

constexpr int kBranchMargin = 24;
constexpr double kBranchLossTol = 1e-10;

CMatrix overlap_matrix(const ModeData& mode) {
  // O(m, n) = <m_-|n_+> = <m| D(-sqrt x) |n>
  return displacement_matrix(Complex(-std::sqrt(mode.params.x()), 0.0), mode.n_max);
}

}  // namespace

double OscillatorDM::purity() const { return rho.cwiseAbs2().sum(); }

double QubitDM::polarization() const { return std::sqrt(std::max(0.0, 0.25 - determinant())); }

std::pair<double, double> QubitDM::eigenvalues() const {
  const double p = polarization();
  return {0.5 - p, 0.5 + p};
}

Eigen::Matrix2cd QubitDM::matrix() const {
  Eigen::Matrix2cd m;
  m << rho11, zeta, std::conj(zeta), rho_m1m1;
  return m;
}

std::pair<CVector, CVector> branch_states(const ModeData& mode, double t) {
  mode.check_truncation();
  const int n = mode.n_max;
  const int big = n + kBranchMargin;
  const ModeVectors v = mode_vectors(mode, t);
  CVector up = CVector::Zero(big), down = CVector::Zero(big);
  up.head(n) = v.up;
  down.head(n) = v.down;
  const double shift = mode.params.shift();
  const CVector plus = displacement_matrix(Complex(-shift, 0.0), big) * up;
  const CVector minus = displacement_matrix(Complex(shift, 0.0), big) * down;
  const double lost = plus.tail(kBranchMargin).squaredNorm() + minus.tail(kBranchMargin).squaredNorm();
  if (lost > kBranchLossTol * mode.init.branch_norm()) {
    throw TruncationError("displaced branches leave weight " + error_number(lost) +
                          " outside the Fock truncation N = " + std::to_string(n));
  }
  return {plus.head(n), minus.head(n)};
}

OscillatorDM oscillator_dm(std::shared_ptr<const ModeData> mode, double t) {
  const auto [plus, minus] = branch_states(*mode, t);
  OscillatorDM dm;
  dm.time = t;
  dm.rho = plus * plus.adjoint() + minus * minus.adjoint();
  dm.rho /= dm.rho.trace().real();
  dm.source = std::move(mode);
  return dm;
}

OscillatorDM oscillator_dm(const ModeData& mode, double t) {
  return oscillator_dm(std::make_shared<const ModeData>(mode), t);
}

OscillatorDM pure_dm(const CVector& psi, double t) {
  OscillatorDM dm;
  dm.time = t;
  dm.rho = psi * psi.adjoint() / psi.squaredNorm();
  return dm;
}

QubitDM qubit_dm(const ModeData& mode, double t) {
  mode.check_truncation();
  const ModeVectors v = mode_vectors(mode, t);
  const double norm = mode.init.branch_norm();
  QubitDM q;
  q.time = t;
  q.rho11 = v.up.squaredNorm() / norm;
  q.rho_m1m1 = v.down.squaredNorm() / norm;
  q.zeta = v.down.dot(overlap_matrix(mode) * v.up) / norm;
  const double tr = q.rho11 + q.rho_m1m1;
  q.rho11 /= tr;
  q.rho_m1m1 /= tr;
  q.zeta /= tr;
  return q;
}

double von_neumann_entropy(const RVector& eigenvalues) {
  double s = 0.0;
  for (double w : eigenvalues) {
    if (w < -1e-8) {
      throw NumericalValidityError("density matrix eigenvalue " + error_number(w) +
                                   " below -1e-8");
    }
    if (w > 1e-10) s -= w * std::log(w);
  }
  return s;
}

double von_neumann_entropy(const OscillatorDM& dm) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(dm.rho, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw LinearAlgebraError("eigendecomposition failed");
  return von_neumann_entropy(es.eigenvalues());
}

double von_neumann_entropy(const QubitDM& dm) {
  const auto [lo, hi] = dm.eigenvalues();
  RVector w(2);
  w << lo, hi;
  return von_neumann_entropy(w);
}

Complex zeta_two_time(const ModeData& mode, double t1, double t2) {
  const ModeVectors v1 = mode_vectors(mode, t1);
  const ModeVectors v2 = mode_vectors(mode, t2);
  return v2.down.dot(overlap_matrix(mode) * v1.up) / mode.init.branch_norm();
}

double trace_product_mode_sum(const ModeData& mode, double t1, double t2) {
  const ModeVectors v1 = mode_vectors(mode, t1);
  const ModeVectors v2 = mode_vectors(mode, t2);
  const double norm = mode.init.branch_norm();
  const double direct =
      (std::norm(v2.up.dot(v1.up)) + std::norm(v2.down.dot(v1.down))) / (norm * norm);
  return direct + std::norm(zeta_two_time(mode, t1, t2)) + std::norm(zeta_two_time(mode, t2, t1));
}

double trace_product(const OscillatorDM& rho1, const OscillatorDM& rho2) {
  if (rho1.n_max() != rho2.n_max()) throw ShapeError("trace_product: Fock dimensions differ");
  // Tr(A B) = sum_ij A_ij B_ji = sum_ij A_ij conj(B_ij) for Hermitian B
  const double value = (rho1.rho.array() * rho2.rho.conjugate().array()).sum().real();
  if (rho1.source && rho1.source == rho2.source) {
    const double closed = trace_product_mode_sum(*rho1.source, rho1.time, rho2.time);
    if (std::abs(closed - value) > 1e-8) {
      throw CrossCheckError("trace_product: matrix trace " + error_number(value) +
                            " vs mode sum " + error_number(closed));
    }
  }
  return value;
}

double hs_distance(const OscillatorDM& rho1, const OscillatorDM& rho2) {
  if (rho1.n_max() != rho2.n_max()) throw ShapeError("hs_distance: Fock dimensions differ");
  const double arg = (rho1.rho - rho2.rho).cwiseAbs2().sum();
  return std::sqrt(std::max(0.0, arg));
}

ExactEvolver::ExactEvolver(const SystemParams& params, const InitialState& init, int n_max)
    : n_max_(n_max) {
  params.validate();
  init.validate();
  if (n_max < 1 || n_max > 256) throw DomainError("exact oracle needs 1 <= n_max <= 256");
  const int n = n_max;
  const double w = params.omega;
  const double half_delta = 0.5 * params.delta / w;
  const double half_eps = 0.5 * params.epsilon / w;
  const double lam = params.lambda / w;
  RMatrix h = RMatrix::Zero(2 * n, 2 * n);
  // index s * n + k, s = 0 for sigma_z = +1, s = 1 for sigma_z = -1
  for (int s = 0; s < 2; ++s) {
    const double sz = s == 0 ? 1.0 : -1.0;
    for (int k = 0; k < n; ++k) {
      h(s * n + k, s * n + k) = k - half_eps * sz;
      if (k + 1 < n) {
        h(s * n + k, s * n + k + 1) = lam * sz * std::sqrt(k + 1.0);
        h(s * n + k + 1, s * n + k) = lam * sz * std::sqrt(k + 1.0);
      }
    }
  }
  for (int k = 0; k < n; ++k) {
    h(k, n + k) = -half_delta;
    h(n + k, k) = -half_delta;
  }
  Eigen::SelfAdjointEigenSolver<RMatrix> es(h);
  if (es.info() != Eigen::Success) throw LinearAlgebraError("Hamiltonian eigendecomposition failed");
  energies_ = es.eigenvalues();
  vectors_ = es.eigenvectors().cast<Complex>();

  CVector psi0(2 * n);
  psi0.head(n) = squeezed_amplitudes(n, init.alpha, init.r, init.vartheta);
  psi0.tail(n) = init.c * squeezed_amplitudes(n, -init.alpha, init.r, init.vartheta);
  psi0 /= std::sqrt(init.branch_norm());
  initial_coeffs_ = vectors_.adjoint() * psi0;
}

ExactState ExactEvolver::evolve(double t) const {
  const int n = n_max_;
  CVector c = initial_coeffs_;
  for (Eigen::Index j = 0; j < c.size(); ++j) c[j] *= std::polar(1.0, -std::fmod(energies_[j] * t, 2.0 * kPi));
  const CVector psi = vectors_ * c;
  const CVector up = psi.head(n), down = psi.tail(n);
  ExactState out;
  out.oscillator.time = t;
  out.oscillator.rho = up * up.adjoint() + down * down.adjoint();
  const double tr = out.oscillator.rho.trace().real();
  out.oscillator.rho /= tr;
  out.qubit.time = t;
  out.qubit.rho11 = up.squaredNorm() / tr;
  out.qubit.rho_m1m1 = down.squaredNorm() / tr;
  out.qubit.zeta = down.dot(up) / tr;
  return out;
}

ExactState exact_evolve_oracle(const SystemParams& params, const InitialState& init, double t,
                               int n_max) {
  return ExactEvolver(params, init, n_max).evolve(t);
}

}  // namespace kitten
