#include "kitten/moments.hpp"

#include <cmath>

namespace kitten {

double CovarianceSummary::variance(double phi) const {
  const double c = std::cos(phi), s = std::sin(phi);
  return sigma11 * c * c + sigma22 * s * s + 2.0 * sigma12 * s * c;
}

CovarianceSummary summarize(double mean_q, double mean_p, double s11, double s12, double s22) {
  CovarianceSummary out;
  out.mean_q = mean_q;
  out.mean_p = mean_p;
  out.sigma11 = s11;
  out.sigma12 = s12;
  out.sigma22 = s22;
  const Complex da2 = out.delta_a_squared();
  if (std::abs(da2) < 1e-12) {
    out.phi_min_defined = false;
    out.phi_min = 0.0;
    out.v_min = out.variance(0.0);
    return out;
  }
  const double base = std::atan2(da2.imag(), da2.real());
  double best_phi = 0.0, best_v = 0.0;
  for (double sign : {1.0, -1.0}) {
    double phi = 0.5 * (base + sign * kPi);
    phi = std::fmod(phi, kPi);
    if (phi < 0.0) phi += kPi;
    const double v = out.variance(phi);
    if (sign > 0.0 || v < best_v) {
      best_phi = phi;
      best_v = v;
    }
  }
  out.phi_min = best_phi;
  out.v_min = best_v;
  out.phi_min_defined = true;
  return out;
}

namespace {

struct Coefficients {
  CVector s, c, d;
};

Coefficients gather(const ModeData& mode, double t) {
  Coefficients k{mode.s_amp, CVector(mode.n_max), CVector(mode.n_max)};
  for (int n = 0; n < mode.n_max; ++n) {
    const auto [cn, dn] = cd_coefficients(mode, n, t);
    k.c[n] = cn;
    k.d[n] = dn;
  }
  return k;
}

// sum_n w(n) G^{sign}_{n,l}(phi, t)
template <typename Weight>
Complex g_sum(const Coefficients& k, int l, double phi, double t, double sign, Weight&& w) {
  const Eigen::Index n_max = k.s.size();
  Complex sum = 0.0;
  for (Eigen::Index n = 0; n + l < n_max; ++n) {
    const Complex g = k.s[n] * std::conj(k.s[n + l]) *
                      (k.c[n] * std::conj(k.c[n + l]) + sign * k.d[n] * std::conj(k.d[n + l]));
    sum += w(static_cast<double>(n)) * g;
  }
  return sum * std::polar(1.0, std::fmod(l * (t + phi), 2.0 * kPi));
}

double first_moment(const ModeData& mode, const Coefficients& k, double t, double phi) {
  const double norm = mode.init.branch_norm();
  const double sx = std::sqrt(mode.params.x());
  const Complex s1 = g_sum(k, 1, phi, t, -1.0, [](double n) { return std::sqrt(n + 1.0); });
  const Complex s0 = g_sum(k, 0, phi, t, -1.0, [](double) { return 1.0; });
  return std::sqrt(2.0) / norm * (s1.real() - 0.5 * sx * std::cos(phi) * s0.real());
}

double second_moment(const ModeData& mode, const Coefficients& k, double t, double phi) {
  const double norm = mode.init.branch_norm();
  const double x = mode.params.x();
  const double cp = std::cos(phi);
  const Complex s2 =
      g_sum(k, 2, phi, t, 1.0, [](double n) { return std::sqrt((n + 1.0) * (n + 2.0)); });
  const Complex s1 = g_sum(k, 1, phi, t, 1.0, [](double n) { return std::sqrt(n + 1.0); });
  const double base = 0.5 * (1.0 + x * cp * cp) + std::norm(mode.init.alpha_plus(mode.params)) +
                      std::norm(mode.init.nu());
  return base + (s2 - 2.0 * std::sqrt(x) * cp * s1).real() / norm;
}

}  // namespace

std::pair<double, double> quadrature_moments(const ModeData& mode, double t, double phi) {
  mode.check_truncation();
  const Coefficients k = gather(mode, t);
  return {first_moment(mode, k, t, phi), second_moment(mode, k, t, phi)};
}

CovarianceSummary covariance_summary(const ModeData& mode, double t) {
  mode.check_truncation();
  const Coefficients k = gather(mode, t);
  const double q = first_moment(mode, k, t, 0.0);
  const double p = first_moment(mode, k, t, 0.5 * kPi);
  const double s11 = second_moment(mode, k, t, 0.0) - q * q;
  const double s22 = second_moment(mode, k, t, 0.5 * kPi) - p * p;
  const double sx = std::sqrt(mode.params.x());
  const Complex g1 = g_sum(k, 1, 0.0, t, 1.0, [&](double n) { return std::sqrt(n + 1.0) * sx; });
  const Complex g2 =
      g_sum(k, 2, 0.0, t, 1.0, [](double n) { return std::sqrt((n + 1.0) * (n + 2.0)); });
  const double s12 = (g1 - g2).imag() / mode.init.branch_norm() - q * p;
  return summarize(q, p, s11, s12, s22);
}

CovarianceSummary covariance_from_dm(const CMatrix& rho) {
  const int n = static_cast<int>(rho.rows());
  // Tr(rho a) = sum_k sqrt(k+1) rho(k+1, k)
  Complex ea = 0.0, ea2 = 0.0;
  double en = 0.0;
  for (int k = 0; k < n; ++k) {
    en += k * rho(k, k).real();
    if (k + 1 < n) ea += std::sqrt(k + 1.0) * rho(k + 1, k);
    if (k + 2 < n) ea2 += std::sqrt((k + 1.0) * (k + 2.0)) * rho(k + 2, k);
  }
  const double q = std::sqrt(2.0) * ea.real();
  const double p = std::sqrt(2.0) * ea.imag();
  // <q^2> = (<a^2> + <a^dag 2> + 2<n> + 1)/2, <p^2> = (2<n> + 1 - <a^2> - <a^dag 2>)/2
  const double q2 = ea2.real() + en + 0.5;
  const double p2 = en + 0.5 - ea2.real();
  // <(qp + pq)/2> = Im <a^2>
  const double qp = ea2.imag();
  return summarize(q, p, q2 - q * q, qp - q * p, p2 - p * p);
}

std::pair<double, double> grid_quadrature_moments(const PhaseGrid& q, double phi) {
  double m1 = 0.0, m2 = 0.0;
  const Complex rot = std::polar(1.0, -phi);
  for (int row = 0; row < q.points; ++row) {
    for (int col = 0; col < q.points; ++col) {
      const double v = q.values(row, col);
      const double proj = 2.0 * (q.point(row, col) * rot).real();
      m1 += proj * v;
      m2 += (proj * proj - 1.0) * v;
    }
  }
  const double da = q.cell_area();
  return {m1 * da / std::sqrt(2.0), 0.5 * m2 * da};
}

}  // namespace kitten
