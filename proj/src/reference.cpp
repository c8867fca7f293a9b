#include "kitten/reference.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

#include "kitten/errors.hpp"
#include "kitten/parallel.hpp"

namespace kitten {

CMatrix SqueezedRing::fock_vectors(int n_max) const {
  CMatrix v(n_max, count);
  for (int k = 0; k < count; ++k) {
    v.col(k) = squeezed_amplitudes(n_max, alpha(k), r, xi_phase(k));
    const double miss = 1.0 - v.col(k).squaredNorm();
    if (miss > 1e-10) {
      throw TruncationError("reference component " + std::to_string(k) + " misses weight " +
                            error_number(miss) + " at N = " + std::to_string(n_max));
    }
  }
  return v;
}

KittenEnsemble KittenEnsemble::uniform(int p, Complex base_alpha, double r, double vartheta,
                                       double theta_tilde) {
  KittenEnsemble e;
  e.p = p;
  e.f.assign(static_cast<std::size_t>(p), Complex(1.0));
  e.g.assign(static_cast<std::size_t>(p), 1.0);
  e.tau = 1.0;
  e.theta_tilde = theta_tilde;
  e.base_alpha = base_alpha;
  e.r = r;
  e.vartheta = vartheta;
  return e;
}

void KittenEnsemble::validate() const {
  if (p < 1) throw DomainError("ensemble needs p >= 1");
  if (static_cast<int>(f.size()) != p || static_cast<int>(g.size()) != p) {
    throw DomainError("ensemble f and g must have p entries");
  }
  if (tau < 0.0 || tau > 1.0) throw DomainError("ensemble tau must lie in [0, 1]");
  for (double w : g) {
    if (w < 0.0) throw DomainError("ensemble weights g must be nonnegative");
  }
  if (tau < 1.0 && std::accumulate(g.begin(), g.end(), 0.0) <= 0.0) {
    throw DomainError("ensemble mixed part has zero total weight");
  }
  if (tau > 0.0 && !(pure_norm(*this) > 0.0)) throw DomainError("ensemble pure part has zero norm");
}

namespace {

struct PairTerms {
  Complex den;  // mu^2 - nu_k nu_l^*
  Complex n_kl;
};

PairTerms pair_terms(const SqueezedRing& ring, int k, int l) {
  const double mu = ring.mu();
  const Complex ak = ring.alpha(k), al = ring.alpha(l);
  const Complex nk = ring.nu(k), nl = ring.nu(l);
  const double nu2 = std::norm(nk);
  PairTerms t;
  t.den = mu * mu - nk * std::conj(nl);
  if (std::abs(t.den) == 0.0) throw DomainError("squeezed overlap denominator vanishes");
  const Complex dk = std::conj(ak) - std::conj(al);
  const Complex d = ak - al;
  t.n_kl = std::norm(ring.base_alpha) * (mu * mu + nk * std::conj(nl)) -
           ak * std::conj(al) * (mu * mu + nu2) + 0.5 * mu * nk * dk * dk +
           0.5 * mu * std::conj(nl) * d * d;
  return t;
}

}  // namespace

Complex squeezed_inner_product(const SqueezedRing& ring, int k, int l) {
  const PairTerms t = pair_terms(ring, k, l);
  return std::exp(-t.n_kl / t.den) / std::sqrt(t.den);
}

CMatrix gram(const SqueezedRing& ring) {
  CMatrix g(ring.count, ring.count);
  for (int l = 0; l < ring.count; ++l) {
    for (int k = 0; k < ring.count; ++k) g(l, k) = squeezed_inner_product(ring, k, l);
  }
  return g;
}

double pure_norm(const KittenEnsemble& ens) {
  const CVector f = Eigen::Map<const CVector>(ens.f.data(), ens.p);
  return f.dot(gram(ens.ring()) * f).real();
}

Complex cross_wigner(const SqueezedRing& ring, int k, int l, Complex beta) {
  const PairTerms t = pair_terms(ring, k, l);
  const double mu = ring.mu();
  const Complex ak = ring.alpha(k) - beta, al = ring.alpha(l) - beta;
  const Complex nk = ring.nu(k), nl = ring.nu(l);
  const Complex g_kl = mu * mu * ak * std::conj(al) + nk * std::conj(nl) * std::conj(ak) * al +
                       mu * nk * std::conj(ak) * std::conj(al) + mu * std::conj(nl) * ak * al;
  return 2.0 / (kPi * std::sqrt(t.den)) * std::exp(-(t.n_kl + 2.0 * g_kl) / t.den);
}

PhaseGrid reference_wigner(const KittenEnsemble& ens, const PhaseGrid& grid) {
  ens.validate();
  const SqueezedRing ring = ens.ring();
  const int p = ens.p;
  const double n_pure = ens.tau > 0.0 ? pure_norm(ens) : 1.0;
  const double n_mixed = std::accumulate(ens.g.begin(), ens.g.end(), 0.0);
  PhaseGrid out = PhaseGrid::make(grid.center, grid.half_extent, grid.points);
  std::vector<double> residue(static_cast<std::size_t>(grid.points), 0.0);
  parallel_rows(grid.points, [&](int row) {
    for (int col = 0; col < grid.points; ++col) {
      const Complex beta = out.point(row, col);
      Complex pure = 0.0;
      double mixed = 0.0;
      for (int k = 0; k < p; ++k) {
        const Complex wkk = cross_wigner(ring, k, k, beta);
        if (ens.tau > 0.0) {
          for (int l = 0; l < p; ++l) {
            const Complex w = (l == k) ? wkk : cross_wigner(ring, k, l, beta);
            pure += ens.f[k] * std::conj(ens.f[l]) * w;
          }
        }
        if (ens.tau < 1.0) mixed += ens.g[k] * wkk.real();
      }
      Complex v = ens.tau * pure / n_pure;
      if (ens.tau < 1.0) v += (1.0 - ens.tau) * mixed / n_mixed;
      out.values(row, col) = v.real();
      residue[static_cast<std::size_t>(row)] =
          std::max(residue[static_cast<std::size_t>(row)], std::abs(v.imag()));
    }
  });
  for (double r : residue) {
    if (r > 1e-10) throw CrossCheckError("reference Wigner has imaginary residue " + error_number(r));
  }
  out.check_boundary();
  return out;
}

OscillatorDM reference_fock_dm(const KittenEnsemble& ens, int n_max) {
  ens.validate();
  const CMatrix v = ens.ring().fock_vectors(n_max);
  CMatrix rho = CMatrix::Zero(n_max, n_max);
  if (ens.tau > 0.0) {
    const CVector f = Eigen::Map<const CVector>(ens.f.data(), ens.p);
    const CVector psi = v * f;
    rho += ens.tau * psi * psi.adjoint() / psi.squaredNorm();
  }
  if (ens.tau < 1.0) {
    const double total = std::accumulate(ens.g.begin(), ens.g.end(), 0.0);
    for (int k = 0; k < ens.p; ++k) {
      rho += (1.0 - ens.tau) * ens.g[k] / total * v.col(k) * v.col(k).adjoint() /
             v.col(k).squaredNorm();
    }
  }
  OscillatorDM dm;
  dm.rho = rho / rho.trace().real();
  return dm;
}

ThermalKittenMixture ThermalKittenMixture::uniform(int count, Complex base_alpha, double r,
                                                   double vartheta, double theta_tilde) {
  ThermalKittenMixture m;
  m.count = count;
  m.g.assign(static_cast<std::size_t>(count), 1.0);
  m.theta_tilde = theta_tilde;
  m.base_alpha = base_alpha;
  m.r = r;
  m.vartheta = vartheta;
  return m;
}

double ThermalKittenMixture::nbar_from_beta(double beta_b, double omega) {
  if (!(beta_b > 0.0)) throw DomainError("inverse temperature must be positive");
  return 1.0 / std::expm1(beta_b * omega);
}

double ThermalKittenMixture::big_n() const {
  const double mu = std::cosh(r);
  return std::sqrt(nbar * nbar + mu * mu * (2.0 * nbar + 1.0));
}

void ThermalKittenMixture::validate() const {
  if (count < 1 || static_cast<int>(g.size()) != count) {
    throw DomainError("thermal mixture needs count >= 1 weights");
  }
  if (nbar < 0.0) throw DomainError("thermal occupation must be nonnegative");
  double total = 0.0;
  for (double w : g) {
    if (w < 0.0) throw DomainError("thermal mixture weights must be nonnegative");
    total += w;
  }
  if (!(total > 0.0)) throw DomainError("thermal mixture has zero total weight");
}

namespace {

double total_weight(const std::vector<double>& g) { return std::accumulate(g.begin(), g.end(), 0.0); }

}  // namespace

PhaseGrid thermal_wigner(const ThermalKittenMixture& mix, const PhaseGrid& grid) {
  mix.validate();
  const SqueezedRing ring = mix.ring();
  const double mu = ring.mu();
  const double spread = mix.nbar + 0.5;
  const double pref = 1.0 / (kPi * spread * total_weight(mix.g));
  PhaseGrid out = PhaseGrid::make(grid.center, grid.half_extent, grid.points);
  parallel_rows(grid.points, [&](int row) {
    for (int col = 0; col < grid.points; ++col) {
      const Complex beta = out.point(row, col);
      double sum = 0.0;
      for (int k = 0; k < mix.count; ++k) {
        const Complex d = ring.alpha(k) - beta;
        sum += mix.g[k] * std::exp(-std::norm(mu * d + ring.nu(k) * std::conj(d)) / spread);
      }
      out.values(row, col) = pref * sum;
    }
  });
  return out;
}

PhaseGrid thermal_husimi(const ThermalKittenMixture& mix, const PhaseGrid& grid) {
  mix.validate();
  const SqueezedRing ring = mix.ring();
  const double mu = ring.mu();
  const double nb = mix.nbar;
  const double bn = mix.big_n();
  const double nu2 = std::sinh(mix.r) * std::sinh(mix.r);
  const double diag = mu * mu * (1.0 + nb) + nu2 * nb;
  const double pref = 1.0 / (kPi * bn * total_weight(mix.g));
  PhaseGrid out = PhaseGrid::make(grid.center, grid.half_extent, grid.points);
  parallel_rows(grid.points, [&](int row) {
    for (int col = 0; col < grid.points; ++col) {
      const Complex beta = out.point(row, col);
      double sum = 0.0;
      for (int k = 0; k < mix.count; ++k) {
        const Complex d = beta - ring.alpha(k);
        const Complex nk = ring.nu(k);
        const double cross = (0.5 * mu * (2.0 * nb + 1.0) *
                              (std::conj(nk) * d * d + nk * std::conj(d) * std::conj(d)))
                                 .real();
        sum += mix.g[k] * std::exp(-(diag * std::norm(d) + cross) / (bn * bn));
      }
      out.values(row, col) = pref * sum;
    }
  });
  return out;
}

CovarianceSummary thermal_moments(const ThermalKittenMixture& mix) {
  mix.validate();
  const SqueezedRing ring = mix.ring();
  const double mu = ring.mu();
  const double nu2 = std::sinh(mix.r) * std::sinh(mix.r);
  const double spread = mix.nbar + 0.5;
  const double total = total_weight(mix.g);
  double q = 0.0, p = 0.0, q2 = 0.0, p2 = 0.0, qp = 0.0;
  for (int k = 0; k < mix.count; ++k) {
    const Complex a = ring.alpha(k);
    const Complex nk = ring.nu(k);
    const double w = mix.g[k] / total;
    q += w * std::sqrt(2.0) * a.real();
    p += w * std::sqrt(2.0) * a.imag();
    q2 += w * (spread * (mu * mu + nu2 - 2.0 * mu * nk.real()) + 2.0 * a.real() * a.real());
    p2 += w * (spread * (mu * mu + nu2 + 2.0 * mu * nk.real()) + 2.0 * a.imag() * a.imag());
    qp += w * (a * a - (2.0 * mix.nbar + 1.0) * mu * nk).imag();
  }
  return summarize(q, p, q2 - q * q, qp - q * p, p2 - p * p);
}

OscillatorDM thermal_fock_dm(const ThermalKittenMixture& mix, int n_max) {
  mix.validate();
  const SqueezedRing ring = mix.ring();
  const double total = total_weight(mix.g);
  CMatrix rho = CMatrix::Zero(n_max, n_max);
  if (mix.nbar == 0.0) {
    const CMatrix v = ring.fock_vectors(n_max);
    for (int k = 0; k < mix.count; ++k) {
      rho += mix.g[k] / total * v.col(k) * v.col(k).adjoint() / v.col(k).squaredNorm();
    }
  } else {
    // propagate the thermal state in a padded space, then keep the leading block
    const int big = n_max + 96;
    CMatrix a = CMatrix::Zero(big, big);
    for (int k = 1; k < big; ++k) a(k - 1, k) = std::sqrt(double(k));
    const CMatrix ad = a.adjoint();
    RVector occupation(big);
    const double ratio = mix.nbar / (mix.nbar + 1.0);
    for (int m = 0; m < big; ++m) occupation[m] = std::pow(ratio, m) / (mix.nbar + 1.0);
    for (int k = 0; k < mix.count; ++k) {
      const Complex alpha = ring.alpha(k);
      const Complex xi = std::polar(mix.r, ring.xi_phase(k));
      const CMatrix gen_d = alpha * ad - std::conj(alpha) * a;
      const CMatrix gen_s = 0.5 * (std::conj(xi) * a * a - xi * ad * ad);
      const CMatrix u = gen_d.exp() * gen_s.exp();
      const CMatrix block = u.topRows(n_max);
      rho += mix.g[k] / total * block * occupation.asDiagonal() * block.adjoint();
    }
    const double kept = rho.trace().real();
    if (kept < 1.0 - 1e-8) {
      throw TruncationError("thermal mixture leaves weight " + error_number(1.0 - kept) +
                            " outside N = " + std::to_string(n_max));
    }
  }
  OscillatorDM dm;
  dm.rho = rho / rho.trace().real();
  return dm;
}

double kl_divergence_q(const PhaseGrid& q1, const PhaseGrid& q2) {
  if (!q1.same_layout(q2)) throw ShapeError("kl_divergence_q: grid layouts differ");
  double sum = 0.0;
  for (int row = 0; row < q1.points; ++row) {
    for (int col = 0; col < q1.points; ++col) {
      const double a = q1.values(row, col);
      if (a < 1e-300) continue;
      const double b = q2.values(row, col);
      if (!(b > 0.0)) {
        throw DomainError("kl_divergence_q: second distribution vanishes on the support of the first");
      }
      sum += a * std::log(a / b);
    }
  }
  return std::max(0.0, sum * q1.cell_area());
}

}  // namespace kitten
