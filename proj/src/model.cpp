#include "kitten/model.hpp"

#include <cmath>
#include <string>

#include "kitten/errors.hpp"
#include "kitten/specfun.hpp"

namespace kitten {

void SystemParams::validate() const {
  if (!(omega > 0.0)) throw DomainError("omega must be positive");
  if (delta < 0.0) throw DomainError("delta must be nonnegative");
  if (lambda < 0.0) throw DomainError("lambda must be nonnegative");
}

void InitialState::validate() const {
  if (r < 0.0) throw DomainError("squeeze magnitude r must be nonnegative");
}

CVector squeezed_amplitudes(int count, Complex alpha, double r, double vartheta) {
  CVector out(std::max(count, 0));
  if (count <= 0) return out;
  if (r < 1e-12) {
    // coherent branch
    out[0] = std::exp(-0.5 * std::norm(alpha));
    for (int n = 1; n < count; ++n) out[n] = out[n - 1] * alpha / std::sqrt(double(n));
    return out;
  }
  const double mu = std::cosh(r);
  const Complex nu = std::polar(std::sinh(r), vartheta);
  const Complex pref =
      std::exp(-0.5 * std::norm(alpha) - nu / (2.0 * mu) * std::conj(alpha) * std::conj(alpha)) /
      std::sqrt(mu);
  // h_n = s^n H_n(z) / sqrt(n!) with s = sqrt(nu/2mu), z = (mu alpha + nu alpha^*) / (2 mu s)
  const Complex two_sz = (mu * alpha + nu * std::conj(alpha)) / mu;
  const Complex two_s2 = nu / mu;
  Complex prev = 1.0, cur = two_sz;
  out[0] = pref;
  if (count > 1) out[1] = pref * cur;
  for (int n = 1; n + 1 < count; ++n) {
    const Complex next = (two_sz * cur - two_s2 * std::sqrt(double(n)) * prev) / std::sqrt(n + 1.0);
    prev = cur;
    cur = next;
    out[n + 1] = pref * cur;
  }
  return out;
}

Complex squeezed_amplitude(int n, Complex alpha, double r, double vartheta) {
  if (n < 0) throw DomainError("squeezed_amplitude: negative index");
  return squeezed_amplitudes(n + 1, alpha, r, vartheta)[n];
}

int default_truncation(Complex alpha, double r, double vartheta, double tail_tol) {
  constexpr int kCap = 256;
  constexpr int kProbe = 512;
  const CVector s = squeezed_amplitudes(kProbe, alpha, r, vartheta);
  // tail[N] = sum_{n >= N} |s_n|^2, accumulated from the far end
  std::vector<double> tail(kProbe + 1, 0.0);
  for (int n = kProbe - 1; n >= 0; --n) tail[n] = tail[n + 1] + std::norm(s[n]);
  for (int n = 1; n <= kCap; ++n) {
    if (tail[n] < tail_tol) return n;
  }
  throw TruncationError("no Fock truncation up to 256 reaches tail " + error_number(tail_tol));
}

double displaced_overlap(int m, int n, double x) {
  const auto& cache = PolynomialCache::shared();
  if (x == 0.0) return m == n ? 1.0 : 0.0;
  const int lo = std::min(m, n);
  const int d = std::abs(m - n);
  const double mag = std::exp(0.5 * (cache.log_factorial(lo) - cache.log_factorial(lo + d)) +
                              0.5 * d * std::log(x) - 0.5 * x);
  // <m| D(-sqrt x) |n>: the lower branch (m > n) carries (-1)^{m-n}
  const double sign = (m > n && d % 2 == 1) ? -1.0 : 1.0;
  return sign * mag * assoc_laguerre(lo, d, x);
}

ModeData ModeData::build(const SystemParams& params, const InitialState& init, int n_max,
                         double tail_tol) {
  params.validate();
  init.validate();
  ModeData m;
  m.params = params;
  m.init = init;
  m.tail_tol = tail_tol;
  const Complex ap = init.alpha_plus(params);
  m.n_max = n_max > 0 ? n_max : default_truncation(ap, init.r, init.vartheta, tail_tol);
  PolynomialCache::shared().require(m.n_max);
  m.s_amp = squeezed_amplitudes(m.n_max, ap, init.r, init.vartheta);
  m.tail = std::max(0.0, 1.0 - m.s_amp.squaredNorm());

  const double x = params.x();
  const double dt = params.delta_tilde();
  const double et = params.eps_tilde();
  m.laguerre.resize(m.n_max);
  m.delta_n.resize(m.n_max);
  m.chi_n.resize(m.n_max);
  // L_n(x) by the upward recurrence, one sweep
  double prev = 0.0, cur = 1.0;
  for (int n = 0; n < m.n_max; ++n) {
    if (n == 1) {
      prev = cur;
      cur = 1.0 - x;
    } else if (n > 1) {
      const double next = ((2.0 * n - 1.0 - x) * cur - (n - 1.0) * prev) / n;
      prev = cur;
      cur = next;
    }
    m.laguerre[n] = cur;
    m.delta_n[n] = -0.5 * dt * cur;
    m.chi_n[n] = std::hypot(m.delta_n[n], et);
  }
  return m;
}

void ModeData::check_truncation() const {
  if (tail > tail_tol) {
    throw TruncationError("Fock truncation N = " + std::to_string(n_max) + " leaves tail " +
                          error_number(tail) + " above " + error_number(tail_tol));
  }
}

std::pair<Complex, Complex> cd_coefficients(const ModeData& mode, int n, double t, Complex c) {
  const double chi = mode.chi_n[n];
  const double dn = mode.delta_n[n];
  const double et = mode.params.eps_tilde();
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  const double cs = std::cos(chi * t);
  const double sinc = chi == 0.0 ? t : std::sin(chi * t) / chi;
  const Complex i(0.0, 1.0);
  const Complex cn = cs + i * (et - sign * c * dn) * sinc;
  const Complex dd = c * cs - i * (c * et + sign * dn) * sinc;
  return {cn, dd};
}

ModeVectors mode_vectors(const ModeData& mode, double t) {
  const int n_max = mode.n_max;
  ModeVectors v{CVector(n_max), CVector(n_max)};
  for (int n = 0; n < n_max; ++n) {
    const auto [cn, dn] = cd_coefficients(mode, n, t);
    const Complex rot = std::polar(1.0, -std::fmod(n * t, 2.0 * kPi));
    const Complex base = mode.s_amp[n] * rot;
    v.up[n] = base * cn;
    v.down[n] = (n % 2 == 0 ? 1.0 : -1.0) * base * dn;
  }
  return v;
}

}  // namespace kitten
