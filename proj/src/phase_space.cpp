#include "kitten/phase_space.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kitten/errors.hpp"
#include "kitten/parallel.hpp"
#include "kitten/specfun.hpp"

namespace kitten {

PhaseGrid PhaseGrid::make(Complex center, double half_extent, int points) {
  if (points < 3 || points % 2 == 0) throw DomainError("grid points per axis must be odd and >= 3");
  if (!(half_extent > 0.0)) throw DomainError("grid half extent must be positive");
  PhaseGrid g;
  g.center = center;
  g.half_extent = half_extent;
  g.points = points;
  g.values = RMatrix::Zero(points, points);
  return g;
}

bool PhaseGrid::same_layout(const PhaseGrid& other) const {
  return points == other.points && half_extent == other.half_extent && center == other.center &&
         values.rows() == other.values.rows() && values.cols() == other.values.cols();
}

double PhaseGrid::integral() const {
  double sum = 0.0;
  for (int row = 0; row < points; ++row) {
    for (int col = 0; col < points; ++col) sum += values(row, col);
  }
  return sum * cell_area();
}

double PhaseGrid::boundary_max() const {
  const int last = points - 1;
  double m = 0.0;
  for (int i = 0; i < points; ++i) {
    m = std::max({m, std::abs(values(0, i)), std::abs(values(last, i)), std::abs(values(i, 0)),
                  std::abs(values(i, last))});
  }
  return m;
}

void PhaseGrid::check_boundary(double tol) const {
  const double b = boundary_max();
  if (b > tol) {
    throw GridExtentError("grid boundary value " + error_number(b) + " exceeds " +
                          error_number(tol) + "; enlarge half_extent");
  }
}

PhaseGrid default_grid(const SystemParams& params, const InitialState& init) {
  const double half = std::abs(init.alpha_plus(params)) * std::exp(init.r) + 3.0;
  return PhaseGrid::make(0.0, half, 301);
}

namespace {

void require_same(const PhaseGrid& a, const PhaseGrid& b, const char* what) {
  if (!a.same_layout(b)) throw ShapeError(std::string(what) + ": grid layouts differ");
}

double sign_of(int k) { return (k % 2 == 0) ? 1.0 : -1.0; }

}  // namespace

WignerKernel::WignerKernel(const CMatrix& rho) : n_(static_cast<int>(rho.rows())) {
  if (rho.rows() != rho.cols()) throw ShapeError("WignerKernel: matrix must be square");
  const auto& cache = PolynomialCache::shared();
  cache.require(n_);
  upper_.resize(n_);
  lower_.resize(n_);
  coupling_.resize(n_);
  scale_.resize(n_);
  half_log_factorial_.resize(n_);
  for (int d = 0; d < n_; ++d) {
    const int len = n_ - d;
    upper_[d].resize(len);
    lower_[d].resize(len);
    coupling_[d].resize(len);
    scale_[d].resize(len);
    for (int k = 0; k < len; ++k) {
      upper_[d][k] = sign_of(k) * rho(k, k + d);
      lower_[d][k] = sign_of(k) * rho(k + d, k);
      coupling_[d][k] = std::sqrt(double(k) * (k + d));
      scale_[d][k] = 1.0 / std::sqrt((k + 1.0) * (k + 1.0 + d));
    }
    half_log_factorial_[d] = 0.5 * cache.log_factorial(d);
  }
}

Complex WignerKernel::operator()(Complex z) const {
  const double x = std::norm(z);
  const double log_x = x > 0.0 ? std::log(x) : 0.0;
  const Complex phase = x > 0.0 ? z / std::sqrt(x) : Complex(1.0);
  Complex total = 0.0;
  Complex ph = 1.0;
  for (int d = 0; d < n_; ++d) {
    if (x == 0.0 && d > 0) break;
    const int len = n_ - d;
    const double g0 = x > 0.0 ? std::exp(0.5 * d * log_x - 0.5 * x - half_log_factorial_[d]) : 1.0;
    const Complex* up = upper_[d].data();
    const Complex* lo = lower_[d].data();
    const double* cpl = coupling_[d].data();
    const double* scl = scale_[d].data();
    Complex a = 0.0, b = 0.0;
    double g_prev = 0.0, g = g0;
    const double base = 1.0 + d - x;
    for (int k = 0; k < len; ++k) {
      a += up[k] * g;
      b += lo[k] * g;
      const double g_next = ((base + 2.0 * k) * g - cpl[k] * g_prev) * scl[k];
      g_prev = g;
      g = g_next;
    }
    total += a * ph;
    if (d > 0) total += b * std::conj(ph);
    ph *= phase;
  }
  return total;
}

namespace {

// Fills grid values with f(beta); f returns a complex value whose imaginary
// part must stay below imag_tol.
template <typename F>
void fill_complex(PhaseGrid& grid, F&& f, double imag_tol) {
  std::vector<double> row_residue(static_cast<std::size_t>(grid.points), 0.0);
  parallel_rows(grid.points, [&](int row) {
    double res = 0.0;
    for (int col = 0; col < grid.points; ++col) {
      const Complex v = f(grid.point(row, col));
      grid.values(row, col) = v.real();
      res = std::max(res, std::abs(v.imag()));
    }
    row_residue[static_cast<std::size_t>(row)] = res;
  });
  const double worst = *std::max_element(row_residue.begin(), row_residue.end());
  if (worst > imag_tol) {
    throw CrossCheckError("Wigner sum has imaginary residue " + error_number(worst));
  }
}

template <typename F>
void fill_real(PhaseGrid& grid, F&& f) {
  parallel_rows(grid.points, [&](int row) {
    for (int col = 0; col < grid.points; ++col) grid.values(row, col) = f(grid.point(row, col));
  });
}

}  // namespace

PhaseGrid wigner(const ModeData& mode, double t, const PhaseGrid& grid) {
  mode.check_truncation();
  const ModeVectors v = mode_vectors(mode, t);
  const WignerKernel up(v.up * v.up.adjoint());
  const WignerKernel down(v.down * v.down.adjoint());
  const double shift = mode.params.shift();
  const double pref = 2.0 / (kPi * mode.init.branch_norm());
  PhaseGrid out = PhaseGrid::make(grid.center, grid.half_extent, grid.points);
  fill_complex(
      out,
      [&](Complex beta) {
        return pref * (up(2.0 * (beta + shift)) + down(2.0 * (beta - shift)));
      },
      1e-10);
  out.check_boundary();
  return out;
}

PhaseGrid wigner_from_dm(const CMatrix& rho, const PhaseGrid& grid, bool check_boundary) {
  const WignerKernel kernel(rho);
  PhaseGrid out = PhaseGrid::make(grid.center, grid.half_extent, grid.points);
  fill_complex(out, [&](Complex beta) { return (2.0 / kPi) * kernel(2.0 * beta); }, 1e-10);
  if (check_boundary) out.check_boundary();
  return out;
}

PhaseGrid wigner_t0_closed_form(const InitialState& init, const PhaseGrid& grid) {
  const double mu = init.mu();
  const Complex nu = init.nu();
  const Complex a = init.alpha;
  const double c2 = std::norm(init.c);
  const double pref = 2.0 / (kPi * init.branch_norm());
  PhaseGrid out = PhaseGrid::make(grid.center, grid.half_extent, grid.points);
  fill_real(out, [&](Complex beta) {
    const Complex dm = mu * (a - beta) + nu * std::conj(a - beta);
    const Complex dp = mu * (a + beta) + nu * std::conj(a + beta);
    return pref * (std::exp(-2.0 * std::norm(dm)) + c2 * std::exp(-2.0 * std::norm(dp)));
  });
  return out;
}

HusimiEvaluator::HusimiEvaluator(const ModeData& mode, double t)
    : shift_(mode.params.shift()), norm_(mode.init.branch_norm()) {
  mode.check_truncation();
  const ModeVectors v = mode_vectors(mode, t);
  const auto& cache = PolynomialCache::shared();
  up_.resize(mode.n_max);
  down_.resize(mode.n_max);
  for (int n = 0; n < mode.n_max; ++n) {
    const double inv = std::exp(-0.5 * cache.log_factorial(n));
    up_[n] = v.up[n] * inv;
    down_[n] = v.down[n] * inv;
  }
}

double HusimiEvaluator::operator()(Complex beta) const {
  const Complex bp = beta + shift_;
  const Complex bm = beta - shift_;
  const Complex wp = std::conj(bp), wm = std::conj(bm);
  Complex x = 0.0, y = 0.0;
  for (Eigen::Index n = up_.size() - 1; n >= 0; --n) {
    x = x * wp + up_[n];
    y = y * wm + down_[n];
  }
  return (std::exp(-std::norm(bp)) * std::norm(x) + std::exp(-std::norm(bm)) * std::norm(y)) /
         (kPi * norm_);
}

PhaseGrid husimi(const ModeData& mode, double t, const PhaseGrid& grid) {
  const HusimiEvaluator q(mode, t);
  PhaseGrid out = PhaseGrid::make(grid.center, grid.half_extent, grid.points);
  fill_real(out, q);
  out.check_boundary();
  return out;
}

PhaseGrid husimi_from_dm(const CMatrix& rho, const PhaseGrid& grid, bool check_boundary) {
  const int n = static_cast<int>(rho.rows());
  PhaseGrid out = PhaseGrid::make(grid.center, grid.half_extent, grid.points);
  fill_real(out, [&](Complex beta) {
    // c_n = <n|beta>
    CVector c(n);
    c[0] = std::exp(-0.5 * std::norm(beta));
    for (int k = 1; k < n; ++k) c[k] = c[k - 1] * beta / std::sqrt(double(k));
    return c.dot(rho * c).real() / kPi;
  });
  if (check_boundary) out.check_boundary();
  return out;
}

LinearApproxParams LinearApproxParams::from(const SystemParams& params, const InitialState& init) {
  const double et = params.eps_tilde();
  if (et == 0.0) throw DomainError("linear approximation of Q needs a nonzero bias epsilon");
  const double dt = params.delta_tilde();
  LinearApproxParams lin;
  lin.varepsilon = et + dt * dt / (8.0 * et);
  lin.omega_plus = 1.0 + dt * dt / (4.0 * et) * params.x();
  lin.omega_minus = 1.0 - dt * dt / (4.0 * et) * params.x();
  const Complex ap = init.alpha_plus(params);
  lin.alpha_hat = ap + init.nu() / init.mu() * std::conj(ap);
  return lin;
}

PhaseGrid husimi_linear(const ModeData& mode, const LinearApproxParams& lin, double t,
                        const PhaseGrid& grid) {
  const SystemParams& p = mode.params;
  const InitialState& s = mode.init;
  const double et = p.eps_tilde();
  if (et == 0.0) throw DomainError("linear approximation of Q needs a nonzero bias epsilon");
  const double dt = p.delta_tilde();
  const double x = p.x();
  const double shift = p.shift();
  const Complex ratio = s.nu() / s.mu();
  const Complex ah = lin.alpha_hat;
  const Complex c = s.c;
  const Complex ap = s.alpha_plus(p);
  const Complex pre = std::exp(-0.5 * ah * std::conj(ap)) / std::sqrt(s.mu());
  const Complex e1 = std::polar(1.0, lin.varepsilon * t);
  const Complex e2 = std::conj(e1);
  const Complex rot_p = std::polar(1.0, -std::fmod(lin.omega_plus * t, 2.0 * kPi));
  const Complex rot_m = std::polar(1.0, -std::fmod(lin.omega_minus * t, 2.0 * kPi));

  auto inner = [&](Complex w, Complex rot) { return rot * (ah + ratio * w * rot); };
  auto fa = [&](Complex w, Complex rot) {
    return dt * dt / (16.0 * et * et) - dt * dt * x * w / (8.0 * et * et) * inner(w, rot);
  };
  auto fb = [&](Complex w, Complex rot) {
    return dt / (4.0 * et) + dt * x * w / (4.0 * et) * inner(w, rot);
  };
  auto phi = [&](Complex w, Complex rot) {
    return std::exp(ah * w * rot - 0.5 * ratio * w * w * rot * rot);
  };

  PhaseGrid out = PhaseGrid::make(grid.center, grid.half_extent, grid.points);
  fill_real(out, [&](Complex beta) {
    const Complex bp = beta + shift, bm = beta - shift;
    const Complex u = std::conj(bp), v = std::conj(bm);
    const Complex xl = pre * ((1.0 - fa(u, rot_p)) * phi(u, rot_p) * e1 +
                              fa(u, rot_m) * phi(u, rot_m) * e2 +
                              c * fb(u, rot_p) * phi(-u, rot_p) * e1 -
                              c * fb(u, rot_m) * phi(-u, rot_m) * e2);
    const Complex yl = pre * (c * fa(-v, rot_p) * phi(-v, rot_p) * e1 +
                              c * (1.0 - fa(-v, rot_m)) * phi(-v, rot_m) * e2 +
                              fb(-v, rot_p) * phi(v, rot_p) * e1 -
                              fb(-v, rot_m) * phi(v, rot_m) * e2);
    return (std::exp(-std::norm(bp)) * std::norm(xl) + std::exp(-std::norm(bm)) * std::norm(yl)) /
           (kPi * s.branch_norm());
  });
  return out;
}

double q_deviation(const PhaseGrid& q_full, const PhaseGrid& q_lin) {
  require_same(q_full, q_lin, "q_deviation");
  return (q_full.values - q_lin.values).cwiseAbs().sum() * q_full.cell_area();
}

namespace {

// u_j = sum_{n >= j} coeff_n binom(n, j) shift^{n-j} / sqrt(n!)
CVector ray_coefficients(const CVector& coeff, double shift) {
  const auto& cache = PolynomialCache::shared();
  const int n_max = static_cast<int>(coeff.size());
  CVector u = CVector::Zero(n_max);
  if (shift == 0.0) {
    for (int j = 0; j < n_max; ++j) u[j] = coeff[j] * std::exp(-0.5 * cache.log_factorial(j));
    return u;
  }
  const double log_shift = std::log(std::abs(shift));
  for (int j = 0; j < n_max; ++j) {
    Complex sum = 0.0;
    for (int n = j; n < n_max; ++n) {
      const int e = n - j;
      const double mag = std::exp(0.5 * cache.log_factorial(n) - cache.log_factorial(j) -
                                  cache.log_factorial(e) + e * log_shift);
      sum += coeff[n] * ((shift < 0.0 && e % 2 == 1) ? -mag : mag);
    }
    u[j] = sum;
  }
  return u;
}

// integral_0^inf r^{s+1} exp(-r^2 - 2 b r - b^2) dr for s < count
void radial_kernels(double b, int count, std::vector<double>& out) {
  out.resize(static_cast<std::size_t>(count));
  const double z = -b * b;
  for (int s = 0; s < count; ++s) {
    const double first = 0.5 * std::exp(std::lgamma(0.5 * s + 1.0)) *
                         kummer_truncated(-0.5 * (s + 1.0), 0.5, z);
    const double second = b * std::exp(std::lgamma(0.5 * (s + 3.0))) *
                          kummer_truncated(-0.5 * s, 1.5, z);
    out[static_cast<std::size_t>(s)] = first - second;
  }
}

}  // namespace

RVector angular_husimi(const ModeData& mode, double t, int samples) {
  mode.check_truncation();
  if (samples < 1) throw DomainError("angular_husimi: samples must be positive");
  const ModeVectors v = mode_vectors(mode, t);
  const double shift = mode.params.shift();
  const CVector u = ray_coefficients(v.up, shift);
  const CVector w = ray_coefficients(v.down, -shift);
  const int n = mode.n_max;
  const double pref = 1.0 / (kPi * mode.init.branch_norm());
  RVector out(samples);
  parallel_rows(samples, [&](int j) {
    const double theta = 2.0 * kPi * j / samples;
    std::vector<double> kp, km;
    radial_kernels(shift * std::cos(theta), 2 * n - 1, kp);
    radial_kernels(-shift * std::cos(theta), 2 * n - 1, km);
    CVector up(n), dn(n);
    for (int k = 0; k < n; ++k) {
      const Complex rot = std::polar(1.0, -k * theta);
      up[k] = u[k] * rot;
      dn[k] = w[k] * rot;
    }
    double total = 0.0;
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        const std::size_t s = static_cast<std::size_t>(a + b);
        total += (up[a] * std::conj(up[b])).real() * kp[s] + (dn[a] * std::conj(dn[b])).real() * km[s];
      }
    }
    const double sn = std::sin(theta);
    out[j] = pref * std::exp(-shift * shift * sn * sn) * total;
  });
  return out;
}

RVector angular_husimi_radial(const ModeData& mode, double t, int samples, double r_max,
                              int radial_points) {
  const HusimiEvaluator q(mode, t);
  RVector out(samples);
  const double dr = r_max / (radial_points - 1);
  parallel_rows(samples, [&](int j) {
    const double theta = 2.0 * kPi * j / samples;
    const Complex dir = std::polar(1.0, theta);
    double sum = 0.0;
    for (int i = 1; i < radial_points; ++i) {
      const double r = i * dr;
      const double wgt = (i == radial_points - 1) ? 0.5 : 1.0;
      sum += wgt * q(r * dir) * r;
    }
    out[j] = sum * dr;
  });
  return out;
}

namespace {

RVector angular_from_vectors(const std::vector<CVector>& branches, double norm, int samples) {
  RVector out(samples);
  parallel_rows(samples, [&](int j) {
    const double theta = 2.0 * kPi * j / samples;
    double total = 0.0;
    for (const CVector& psi : branches) {
      Complex sum = 0.0;
      const Complex step = std::polar(1.0, -theta);
      for (Eigen::Index k = psi.size() - 1; k >= 0; --k) sum = sum * step + psi[k];
      total += std::norm(sum);
    }
    out[j] = total / (2.0 * kPi * norm);
  });
  return out;
}

}  // namespace

RVector angular_distribution(const ModeData& mode, double t, int samples, int k_max) {
  mode.check_truncation();
  const int n = mode.n_max;
  const int big = k_max > 0 ? k_max : n + 24;
  if (big < n) throw DomainError("angular_distribution: k_max below the Fock truncation");
  const ModeVectors v = mode_vectors(mode, t);
  CVector up = CVector::Zero(big), down = CVector::Zero(big);
  up.head(n) = v.up;
  down.head(n) = v.down;
  const double shift = mode.params.shift();
  const CVector plus = displacement_matrix(Complex(-shift, 0.0), big) * up;
  const CVector minus = displacement_matrix(Complex(shift, 0.0), big) * down;
  const double lost =
      (v.up.squaredNorm() - plus.squaredNorm()) + (v.down.squaredNorm() - minus.squaredNorm());
  if (lost > 1e-10 * mode.init.branch_norm()) {
    throw TruncationError("angular_distribution: k_max = " + std::to_string(big) +
                          " leaves tail " + error_number(lost));
  }
  return angular_from_vectors({plus, minus}, mode.init.branch_norm(), samples);
}

RVector angular_distribution_from_dm(const CMatrix& rho, int samples) {
  const int n = static_cast<int>(rho.rows());
  RVector out(samples);
  parallel_rows(samples, [&](int j) {
    const double theta = 2.0 * kPi * j / samples;
    CVector e(n);
    for (int k = 0; k < n; ++k) e[k] = std::polar(1.0, k * theta);
    out[j] = e.dot(rho * e).real() / (2.0 * kPi);
  });
  return out;
}

std::vector<int> circular_peaks(const RVector& profile, double rel_threshold) {
  std::vector<int> peaks;
  const int n = static_cast<int>(profile.size());
  if (n < 3) return peaks;
  const double floor = rel_threshold * profile.maxCoeff();
  for (int i = 0; i < n; ++i) {
    const double left = profile[(i + n - 1) % n];
    const double right = profile[(i + 1) % n];
    if (profile[i] > left && profile[i] >= right && profile[i] >= floor) peaks.push_back(i);
  }
  return peaks;
}

double wehrl_entropy(const PhaseGrid& q) {
  double sum = 0.0;
  for (int row = 0; row < q.points; ++row) {
    for (int col = 0; col < q.points; ++col) {
      const double v = q.values(row, col);
      if (v > 0.0) sum -= v * std::log(v);
    }
  }
  return sum * q.cell_area();
}

double negativity(const PhaseGrid& w) {
  double sum = 0.0;
  for (int row = 0; row < w.points; ++row) {
    for (int col = 0; col < w.points; ++col) sum += std::abs(w.values(row, col));
  }
  return std::max(0.0, sum * w.cell_area() - 1.0);
}

PhaseGrid gaussian_convolve(const PhaseGrid& src, double variance) {
  if (!(variance > 0.0)) throw DomainError("gaussian_convolve: variance must be positive");
  src.check_boundary();
  const double h = src.spacing();
  // exp(-d^2 / v) < 1e-17 beyond this radius
  const int radius = static_cast<int>(std::ceil(std::sqrt(40.0 * variance) / h));
  if (radius >= src.points) {
    throw GridExtentError("gaussian_convolve: kernel support exceeds the grid");
  }
  std::vector<double> kernel(static_cast<std::size_t>(2 * radius + 1));
  for (int d = -radius; d <= radius; ++d) {
    kernel[static_cast<std::size_t>(d + radius)] =
        std::exp(-(d * h) * (d * h) / variance) * h / std::sqrt(kPi * variance);
  }
  const int n = src.points;
  RMatrix tmp = RMatrix::Zero(n, n);
  parallel_rows(n, [&](int row) {
    for (int col = 0; col < n; ++col) {
      double s = 0.0;
      for (int d = -radius; d <= radius; ++d) {
        const int c = col + d;
        if (c >= 0 && c < n) s += kernel[static_cast<std::size_t>(d + radius)] * src.values(row, c);
      }
      tmp(row, col) = s;
    }
  });
  PhaseGrid out = PhaseGrid::make(src.center, src.half_extent, src.points);
  parallel_rows(n, [&](int row) {
    for (int col = 0; col < n; ++col) {
      double s = 0.0;
      for (int d = -radius; d <= radius; ++d) {
        const int r = row + d;
        if (r >= 0 && r < n) s += kernel[static_cast<std::size_t>(d + radius)] * tmp(r, col);
      }
      out.values(row, col) = s;
    }
  });
  return out;
}

double hs_distance_wigner(const PhaseGrid& w1, const PhaseGrid& w2) {
  require_same(w1, w2, "hs_distance_wigner");
  return std::sqrt(kPi * (w1.values - w2.values).squaredNorm() * w1.cell_area());
}

}  // namespace kitten
