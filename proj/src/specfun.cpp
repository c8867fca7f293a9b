#include "kitten/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace kitten {

PolynomialCache::PolynomialCache(int max_order) : max_order_(max_order) {
  if (max_order < 0) throw CapacityError("PolynomialCache: negative capacity");
  log_factorial_.resize(static_cast<std::size_t>(max_order) + 1);
  log_factorial_[0] = 0.0;
  long double acc = 0.0L;
  for (int n = 1; n <= max_order; ++n) {
    acc += std::log(static_cast<long double>(n));
    log_factorial_[static_cast<std::size_t>(n)] = static_cast<double>(acc);
  }
}

void PolynomialCache::require(int n) const {
  if (n < 0 || n > max_order_) {
    throw CapacityError("order " + std::to_string(n) + " outside factorial cache [0, " +
                        std::to_string(max_order_) + "]");
  }
}

const PolynomialCache& PolynomialCache::shared() {
  static const PolynomialCache cache(512);
  return cache;
}

std::vector<Complex> hermite_sequence(int count, Complex z, const PolynomialCache& cache) {
  std::vector<Complex> h(static_cast<std::size_t>(std::max(count, 0)));
  if (count <= 0) return h;
  cache.require(count - 1);
  h[0] = 1.0;
  if (count > 1) h[1] = 2.0 * z;
  for (int k = 1; k + 1 < count; ++k) {
    h[static_cast<std::size_t>(k) + 1] =
        2.0 * z * h[static_cast<std::size_t>(k)] - 2.0 * k * h[static_cast<std::size_t>(k) - 1];
  }
  return h;
}

double assoc_laguerre(int n, int j, double x) {
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = 1.0 + j - x;
  for (int k = 1; k < n; ++k) {
    const double next = ((2.0 * k + 1.0 + j - x) * cur - (k + j) * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

double assoc_laguerre_explicit(int n, int j, double x) {
  // term_k = (-1)^k C(n+j, n-k) x^k / k!
  long double term = 1.0L;
  for (int i = 1; i <= n; ++i) term = term * static_cast<long double>(j + i) / i;  // C(n+j, n)
  long double sum = term;
  for (int k = 0; k < n; ++k) {
    term *= -static_cast<long double>(x) * (n - k) / ((k + 1.0L) * (j + k + 1.0L));
    sum += term;
  }
  return static_cast<double>(sum);
}

double kummer_truncated(double a, double b, double z, double tol) {
  if (b <= 0.0 && b == std::floor(b)) {
    throw DomainError("kummer_truncated: b is a nonpositive integer");
  }
  constexpr int kTermCap = 500;
  const bool terminating = a <= 0.0 && a == std::floor(a);
  double sum = 1.0;
  double term = 1.0;
  for (int r = 0; r < kTermCap; ++r) {
    if (terminating && a + r == 0.0) return sum;
    term *= (a + r) / (b + r) * z / (r + 1.0);
    sum += term;
    if (!std::isfinite(sum)) throw SeriesError("kummer_truncated: partial sums overflow");
    if (!terminating && std::abs(term) <= tol * std::abs(sum)) return sum;
  }
  throw SeriesError("kummer_truncated: no convergence within 500 terms");
}

namespace {

template <typename Scalar>
Scalar g_kernel_radial(int k, int l, double modulus, const PolynomialCache& cache) {
  const int top = std::min(k, l);
  const Scalar log_mod = std::log(static_cast<Scalar>(modulus));
  const Scalar half_norm = Scalar(0.5) * (static_cast<Scalar>(cache.log_factorial(k)) +
                                          static_cast<Scalar>(cache.log_factorial(l)));
  const Scalar gauss = -Scalar(0.5) * static_cast<Scalar>(modulus) * static_cast<Scalar>(modulus);
  Scalar sum = 0;
  for (int r = top; r >= 0; --r) {
    const Scalar log_term = half_norm - static_cast<Scalar>(cache.log_factorial(k - r)) -
                            static_cast<Scalar>(cache.log_factorial(l - r)) -
                            static_cast<Scalar>(cache.log_factorial(r)) +
                            static_cast<Scalar>(k + l - 2 * r) * log_mod + gauss;
    const Scalar term = std::exp(log_term);
    sum += (r % 2 == 0) ? term : -term;
  }
  return sum;
}

}  // namespace

Complex g_kernel(int k, int l, Complex z, const PolynomialCache& cache) {
  cache.require(k);
  cache.require(l);
  const double modulus = std::abs(z);
  if (modulus == 0.0) {
    if (k != l) return 0.0;
    return (k % 2 == 0) ? 1.0 : -1.0;
  }
  const double radial = (modulus < 0.3 && k + l > 20)
                            ? static_cast<double>(g_kernel_radial<long double>(k, l, modulus, cache))
                            : g_kernel_radial<double>(k, l, modulus, cache);
  return radial * std::polar(1.0, std::arg(z) * (l - k));
}

void scaled_laguerre_run(double x, int d, std::span<double> out) {
  const std::size_t count = out.size();
  if (count == 0) return;
  double g0;
  if (x == 0.0) {
    g0 = (d == 0) ? 1.0 : 0.0;
  } else {
    g0 = std::exp(0.5 * d * std::log(x) - 0.5 * x - 0.5 * std::lgamma(d + 1.0));
  }
  out[0] = g0;
  if (count == 1) return;
  out[1] = (1.0 + d - x) * g0 / std::sqrt(1.0 + d);
  for (std::size_t k = 1; k + 1 < count; ++k) {
    const double kk = static_cast<double>(k);
    out[k + 1] = ((2.0 * kk + 1.0 + d - x) * out[k] - std::sqrt(kk * (kk + d)) * out[k - 1]) /
                 std::sqrt((kk + 1.0) * (kk + 1.0 + d));
  }
}

CMatrix displacement_matrix(Complex z, int dim) {
  CMatrix out = CMatrix::Zero(dim, dim);
  const double x = std::norm(z);
  const Complex phase = (x == 0.0) ? Complex(1.0) : z / std::abs(z);
  const Complex back = -std::conj(phase);
  std::vector<double> run(static_cast<std::size_t>(dim));
  Complex up(1.0), down(1.0);  // phase^d and (-phase^*)^d
  for (int d = 0; d < dim; ++d) {
    std::span<double> g(run.data(), static_cast<std::size_t>(dim - d));
    scaled_laguerre_run(x, d, g);
    for (int k = 0; k < dim - d; ++k) {
      out(k + d, k) = g[static_cast<std::size_t>(k)] * up;
      if (d > 0) out(k, k + d) = g[static_cast<std::size_t>(k)] * down;
    }
    up *= phase;
    down *= back;
  }
  return out;
}

CMatrix g_kernel_matrix(Complex z, int dim) {
  const CMatrix disp = displacement_matrix(z, dim);
  CMatrix out(dim, dim);
  for (int k = 0; k < dim; ++k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    for (int l = 0; l < dim; ++l) out(k, l) = sign * disp(l, k);
  }
  return out;
}

}  // namespace kitten
